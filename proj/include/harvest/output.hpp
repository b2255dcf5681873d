#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "harvest/config.hpp"

namespace harvest {

// Stable column order; new columns are only ever appended.
const std::vector<std::string>& csv_columns();

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const ResultRow& row);
void write_json_line(std::ostream& os, const ResultRow& row);
void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat fmt);

// Writes through a sibling temporary file and renames it into place.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace harvest

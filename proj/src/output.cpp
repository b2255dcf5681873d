#include "harvest/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <unistd.h>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "axis_value", "C_per_lambda2", "I_per_lambda2", "absE_per_lambda2", "L_AA", "L_BB",
      "abs_L_AB", "abs_M", "converged", "rungs", "series", "error"};
  return cols;
}

void write_csv_header(std::ostream& os) {
  const auto& c = csv_columns();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "\n";
}

void write_csv_row(std::ostream& os, const ResultRow& r) {
  os << num(r.axis_value) << ',' << num(r.C) << ',' << num(r.I) << ',' << num(r.absE) << ','
     << num(r.L_AA) << ',' << num(r.L_BB) << ',' << num(r.abs_L_AB) << ',' << num(r.abs_M) << ','
     << (r.converged ? "true" : "false") << ',' << r.rungs << ',' << csv_escape(r.series) << ','
     << csv_escape(r.error) << "\n";
}

void write_json_line(std::ostream& os, const ResultRow& r) {
  nlohmann::ordered_json j;
  auto val = [](double x) { return std::isnan(x) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(x); };
  j["axis_value"] = val(r.axis_value);
  j["C_per_lambda2"] = val(r.C);
  j["I_per_lambda2"] = val(r.I);
  j["absE_per_lambda2"] = val(r.absE);
  j["L_AA"] = val(r.L_AA);
  j["L_BB"] = val(r.L_BB);
  j["abs_L_AB"] = val(r.abs_L_AB);
  j["abs_M"] = val(r.abs_M);
  j["converged"] = r.converged;
  j["rungs"] = r.rungs;
  j["series"] = r.series;
  j["error"] = r.error;
  os << j.dump() << "\n";
}

void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat fmt) {
  if (fmt == OutputFormat::Csv) {
    write_csv_header(os);
    for (const auto& r : rows) write_csv_row(os, r);
  } else {
    for (const auto& r : rows) write_json_line(os, r);
  }
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + path + "'");
    out << contents;
    out.flush();
    if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into '" + path + "': " + ec.message());
  }
}

}  // namespace harvest

#pragma once

// Run configuration: flat JSON-compatible key/value files and preset expansion.

#include <map>
#include <string>
#include <vector>

#include "harvest/scenario.hpp"

namespace harvest {

enum class OutputFormat { Csv, JsonLines };

struct RunConfig {
  std::string preset;  // empty for ad-hoc runs
  std::vector<Series> series;
  std::string output = "-";
  OutputFormat format = OutputFormat::Csv;
};

// Flat key/value overrides, keys as in the config file (e.g. "mass_over_sigma").
using Overrides = std::map<std::string, std::string>;

// Keys understood by the config file, in documentation order.
const std::vector<std::string>& config_keys();

// Parses a config file body into key/value pairs. Syntax errors report line and column.
Overrides read_overrides(const std::string& text);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Builds a RunConfig from overrides alone (preset, scenario keys, sweep keys).
RunConfig make_run_config(const Overrides& kv);

// "a:b:lin:n" or "a:b:log:n"
std::vector<double> parse_range(const std::string& spec);

OutputFormat parse_format(const std::string& name);

}  // namespace harvest

#include <cmath>
#include "harvest/config.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

using json = nlohmann::json;

double to_number(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + s + "'");
  if (!std::isfinite(v)) throw ConfigError("key '" + key + "': must be finite, got '" + s + "'");
  return v;
}

int to_int(const std::string& key, const std::string& s) {
  const double v = to_number(key, s);
  if (v != static_cast<int>(v)) throw ConfigError("key '" + key + "': expected an integer");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + s + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(to_number(key, item));
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty value list");
  return out;
}

void apply(ScenarioConfig& c, const std::string& k, const std::string& v) {
  QuadratureSpec& q = c.quadrature;
  if (k == "scenario") c.kind = parse_scenario(v);
  else if (k == "vacuum") c.vacuum = parse_vacuum(v);
  else if (k == "mass_over_sigma") c.mass = to_number(k, v);
  else if (k == "gap_times_sigma") c.gap = to_number(k, v);
  else if (k == "dab_over_sigma") c.dab = to_number(k, v);
  else if (k == "position_over_sigma") c.position = to_number(k, v);
  else if (k == "position_origin") {
    if (v == "horizon") c.origin = PositionOrigin::Horizon;
    else if (v == "singularity") c.origin = PositionOrigin::Singularity;
    else throw ConfigError("key 'position_origin': expected horizon or singularity");
  } else if (k == "bob_from_horizon_over_sigma") c.bob_from_horizon = to_number(k, v);
  else if (k == "delta_over_sigma") c.delta = to_number(k, v);
  else if (k == "slice_over_sigma") c.slice = to_number(k, v);
  else if (k == "speed") c.speed = to_number(k, v);
  else if (k == "lambda") c.lambda = to_number(k, v);
  else if (k == "epsilon_over_sigma") {
    // keep k * eps fixed unless k is given explicitly
    const double eps = to_number(k, v);
    q.k_sharpness *= q.epsilon / eps;
    q.epsilon = eps;
  } else if (k == "k_times_sigma") q.k_sharpness = to_number(k, v);
  else if (k == "nodes") q.nodes = to_int(k, v);
  else if (k == "support_radius") q.support_radius = to_number(k, v);
  else if (k == "rel_tol") q.rel_tol = to_number(k, v);
  else if (k == "abs_tol") q.abs_tol = to_number(k, v);
  else if (k == "max_refinements") q.max_refinements = to_int(k, v);
  else if (k == "contour_depth_over_sigma") q.contour_depth = to_number(k, v);
  else if (k == "max_nodes") q.max_nodes = to_int(k, v);
  else if (k == "extrapolate") q.extrapolate = to_bool(k, v);
}

const std::vector<std::string> kScenarioKeys = {
    "scenario", "vacuum", "mass_over_sigma", "gap_times_sigma", "dab_over_sigma",
    "position_over_sigma", "position_origin", "bob_from_horizon_over_sigma", "delta_over_sigma",
    "slice_over_sigma", "speed", "lambda", "epsilon_over_sigma", "k_times_sigma", "nodes",
    "support_radius", "rel_tol", "abs_tol", "max_refinements", "contour_depth_over_sigma",
    "max_nodes", "extrapolate"};

std::string preset_list() {
  std::string s;
  for (const auto& p : presets()) s += (s.empty() ? "" : ", ") + p.name;
  return s;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = kScenarioKeys;
    for (const char* extra : {"axis", "values", "range", "preset", "series", "label", "output", "format"})
      k.push_back(extra);
    return k;
  }();
  return keys;
}

std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4)
    throw ConfigError("range '" + spec + "': expected start:stop:lin|log:count");
  const double a = to_number("range", parts[0]), b = to_number("range", parts[1]);
  const int n = to_int("range", parts[3]);
  if (n < 1) throw ConfigError("range '" + spec + "': count must be positive");
  if (parts[2] == "lin") return linspace(a, b, n);
  if (parts[2] == "log") return logspace(a, b, n);
  throw ConfigError("range '" + spec + "': spacing must be lin or log");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "jsonl" || name == "json-lines") return OutputFormat::JsonLines;
  throw ConfigError("unknown output format '" + name + "' (csv, jsonl)");
}

RunConfig make_run_config(const Overrides& kv) {
  const auto& keys = config_keys();
  for (const auto& [k, v] : kv)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw ConfigError("unknown config key '" + k + "'");
  auto get = [&](const char* k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  RunConfig rc;
  if (const auto* p = get("preset")) {
    const Preset* pre = find_preset(*p);
    if (!pre) throw ConfigError("unknown preset '" + *p + "'; available presets: " + preset_list());
    rc.preset = pre->name;
    rc.series = pre->series;
    if (const auto* only = get("series")) {
      std::erase_if(rc.series, [&](const Series& s) { return s.label != *only; });
      if (rc.series.empty()) throw ConfigError("preset " + pre->name + " has no series '" + *only + "'");
    }
  } else {
    Series s;
    s.label = get("label") ? *get("label") : "run";
    s.axis = SweepAxis::Position;
    rc.series.push_back(s);
  }

  for (auto& s : rc.series) {
    for (const auto& k : kScenarioKeys)
      if (const auto* v = get(k.c_str())) apply(s.config, k, *v);
    const bool has_axis = get("axis") != nullptr;
    if (has_axis) s.axis = parse_axis(*get("axis"));
    if (const auto* v = get("values")) s.values = to_list("values", *v);
    else if (const auto* r = get("range")) s.values = parse_range(*r);
    else if (has_axis || s.values.empty()) {
      // single point at the configured value of the axis
      ScenarioConfig probe = s.config;
      double cur = 0.0;
      switch (s.axis) {
        case SweepAxis::Position: cur = probe.position; break;
        case SweepAxis::Delta: cur = probe.delta; break;
        case SweepAxis::Mass: cur = probe.mass; break;
        case SweepAxis::Gap: cur = probe.gap; break;
        case SweepAxis::Dab: cur = probe.dab; break;
        case SweepAxis::Lambda: cur = probe.lambda; break;
        case SweepAxis::Speed: cur = probe.speed.value_or(0.0); break;
        case SweepAxis::BobFromHorizon: cur = probe.bob_from_horizon.value_or(0.0); break;
        case SweepAxis::Slice: cur = probe.slice; break;
      }
      s.values = {cur};
    }
    s.config.quadrature.validate();
  }
  if (const auto* o = get("output")) rc.output = *o;
  if (const auto* f = get("format")) rc.format = parse_format(*f);
  return rc;
}

Overrides read_overrides(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a flat JSON object");
  Overrides kv;
  for (const auto& [k, v] : doc.items()) {
    if (v.is_string()) {
      kv[k] = v.get<std::string>();
    } else if (v.is_boolean()) {
      kv[k] = v.get<bool>() ? "true" : "false";
    } else if (v.is_number()) {
      std::ostringstream os;
      os.precision(17);
      os << v.get<double>();
      kv[k] = os.str();
    } else if (v.is_array()) {
      std::ostringstream os;
      os.precision(17);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError("key '" + k + "': arrays must hold numbers");
        os << (i ? "," : "") << v[i].get<double>();
      }
      kv[k] = os.str();
    } else {
      throw ConfigError("key '" + k + "': nested objects are not allowed in the flat config");
    }
  }
  return kv;
}

RunConfig parse_config(const std::string& text) { return make_run_config(read_overrides(text)); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace harvest

// Command-line driver: sweeps and ladder diagnostics.
//
//   harvest [run] --preset fig9 --out ff.csv
//   harvest --scenario ss --mass 5 --gap 2 --dab 2 --axis dist --range 1:100:log:50
//   harvest diagnose --scenario fs --dist 0.01

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "harvest/config.hpp"
#include "harvest/errors.hpp"
#include "harvest/output.hpp"

using namespace harvest;

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

const Flag kFlags[] = {
    {"--preset", "preset", "named figure preset"},
    {"--series", "series", "restrict a preset to one series"},
    {"--scenario", "scenario", "ss, fs, ff or flatboost"},
    {"--vacuum", "vacuum", "boulware, unruh, hartle-hawking or minkowski"},
    {"--mass", "mass_over_sigma", "M/sigma"},
    {"--gap", "gap_times_sigma", "Omega*sigma"},
    {"--dab", "dab_over_sigma", "proper separation d_AB/sigma"},
    {"--dist", "position_over_sigma", "Alice's distance from the origin, /sigma"},
    {"--origin", "position_origin", "horizon or singularity"},
    {"--bob-dist", "bob_from_horizon_over_sigma", "FS: Bob's distance from the horizon"},
    {"--delta", "delta_over_sigma", "FS: Bob's switching delay"},
    {"--slice", "slice_over_sigma", "SS: PG time of the common slice"},
    {"--speed", "speed", "FlatBoost: boost speed"},
    {"--lambda", "lambda", "reporting coupling for mutual information"},
    {"--epsilon", "epsilon_over_sigma", "pole regulator"},
    {"--k", "k_times_sigma", "smooth step sharpness"},
    {"--nodes", "nodes", "Gauss-Legendre nodes per axis, first rung"},
    {"--support-radius", "support_radius", "strong support half width in sigma"},
    {"--rel-tol", "rel_tol", "relative ladder tolerance"},
    {"--abs-tol", "abs_tol", "absolute ladder tolerance"},
    {"--max-refinements", "max_refinements", "ladder refinements"},
    {"--depth", "contour_depth_over_sigma", "contour deformation depth"},
    {"--max-nodes", "max_nodes", "node cap"},
    {"--extrapolate", "extrapolate", "Richardson-extrapolate in epsilon (true/false)"},
    {"--axis", "axis", "dist, delta, mass, gap, dab, lambda, speed, bob_dist, slice"},
    {"--range", "range", "start:stop:lin|log:count"},
    {"--values", "values", "comma separated axis values"},
    {"--out", "output", "output path, - for stdout"},
    {"--format", "format", "csv or jsonl"},
};

int run(const RunConfig& rc) {
  std::vector<ResultRow> all;
  for (const auto& s : rc.series) {
    auto rows = sweep(s.config, s.axis, s.values);
    for (auto& r : rows) {
      r.series = s.label;
      if (!r.converged) std::cerr << s.label << " @ " << r.axis_value << ": " << r.error << "\n";
    }
    all.insert(all.end(), rows.begin(), rows.end());
  }
  std::ostringstream os;
  write_rows(os, all, rc.format);
  if (rc.output == "-")
    std::cout << os.str();
  else
    write_atomically(rc.output, os.str());
  for (const auto& r : all)
    if (!r.converged) return 2;
  return 0;
}

int diagnose(const RunConfig& rc) {
  const Series& s = rc.series.front();
  ScenarioConfig cfg = s.config;
  set_axis(cfg, s.axis, s.values.front());
  const PairSetup p = build_pair(cfg);
  const QuadratureSpec& spec = cfg.quadrature;
  const VacuumKind vac = p.ctx.vacuum;
  const int n0 = base_nodes(p.A, p.B, vac, spec);
  QuadratureSpec espec = spec;
  espec.abs_tol = std::max(espec.abs_tol, kSignallingFloor);
  std::cout << "scenario " << to_string(cfg.kind) << ", vacuum " << to_string(vac) << ", "
            << to_string(s.axis) << " = " << s.values.front() << "\n";
  std::cout << "tau_A0 = " << p.A.peak << ", tau_B0 = " << p.B.peak
            << ", contour depth A = " << contour_depth(p.A, vac, spec)
            << ", B = " << contour_depth(p.B, vac, spec) << ", first rung N = " << n0 << "\n";
  bool ok = true;
  auto show = [&](const LadderReport& l) {
    std::cout << l.to_text();
    ok = ok && l.converged;
  };
  show(run_ladder(local_evaluator(p.A, p.A, vac, spec), spec, "L_AA", n0));
  show(run_ladder(local_evaluator(p.B, p.B, vac, spec), spec, "L_BB", n0));
  show(run_ladder(local_evaluator(p.A, p.B, vac, spec), spec, "L_AB", n0));
  show(run_ladder(nonlocal_evaluator(p.A, p.B, vac, spec), spec, "M", n0));
  show(run_ladder(signalling_evaluator(p.A, p.B, vac, espec), espec, "E", n0));
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string mode = "run";
  if (!args.empty() && (args[0] == "run" || args[0] == "diagnose")) {
    mode = args[0];
    args.erase(args.begin());
  }

  CLI::App app{"Entanglement harvesting with derivative-coupled detectors near a black hole"};
  app.name("harvest " + mode);
  std::map<std::string, std::string> raw;
  std::string config_path;
  bool list = false;
  app.add_option("--config", config_path, "flat JSON config file");
  app.add_flag("--list-presets", list, "print the preset names and exit");
  for (const Flag& f : kFlags) app.add_option(f.name, raw[f.key], f.help);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list) {
    for (const auto& p : presets()) std::cout << p.name << "  " << p.description << "\n";
    return 0;
  }

  try {
    Overrides kv;
    for (const Flag& f : kFlags)
      if (app.count(f.name) > 0) kv[f.key] = raw[f.key];
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      // flags take precedence over the file
      for (auto& [k, v] : read_overrides(ss.str())) kv.emplace(k, v);
    }
    const RunConfig rc = make_run_config(kv);
    return mode == "diagnose" ? diagnose(rc) : run(rc);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

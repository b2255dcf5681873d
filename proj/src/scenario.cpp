#include "harvest/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "harvest/errors.hpp"

namespace harvest {

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::SS: return "ss";
    case ScenarioKind::FS: return "fs";
    case ScenarioKind::FF: return "ff";
    case ScenarioKind::FlatBoost: return "flatboost";
  }
  return "?";
}

ScenarioKind parse_scenario(const std::string& name) {
  if (name == "ss" || name == "SS") return ScenarioKind::SS;
  if (name == "fs" || name == "FS") return ScenarioKind::FS;
  if (name == "ff" || name == "FF") return ScenarioKind::FF;
  if (name == "flatboost" || name == "FlatBoost" || name == "boost") return ScenarioKind::FlatBoost;
  throw ConfigError("unknown scenario '" + name + "' (ss, fs, ff, flatboost)");
}

double alice_radius(const ScenarioConfig& cfg) {
  if (cfg.origin == PositionOrigin::Singularity) return cfg.position;
  return 2.0 * cfg.mass + cfg.position;
}

namespace {

void forbid_boulware_interior(const ScenarioConfig& cfg, const BlackHole& bh,
                              const DetectorParams& d) {
  if (cfg.vacuum != VacuumKind::Boulware || d.worldline.kind() != Worldline::Kind::Infall) return;
  if (d.support(cfg.quadrature.support_radius).hi >= infall_horizon_time(bh))
    throw ConfigError("Boulware vacuum is undefined inside the horizon, but a strong support "
                      "reaches the interior");
}

}  // namespace

PairSetup build_pair(const ScenarioConfig& cfg) {
  const QuadratureSpec& spec = cfg.quadrature;
  spec.validate();
  if (!(cfg.dab >= 0.0)) throw ConfigError("d_AB must be non-negative");
  const double R = spec.support_radius;

  auto finish = [&](DetectorParams A, DetectorParams B, VacuumKind vac) {
    try {
      A.validate(R);
      B.validate(R);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("infeasible placement: ") + e.what());
    }
    return PairSetup{A, B, CorrelatorContext(vac, A.worldline, B.worldline, spec.epsilon)};
  };

  switch (cfg.kind) {
    case ScenarioKind::SS: {
      if (cfg.vacuum == VacuumKind::Minkowski) {
        return finish({cfg.gap, 1.0, cfg.slice, minkowski_static_worldline(0.0)},
                      {cfg.gap, 1.0, cfg.slice, minkowski_static_worldline(cfg.dab)},
                      VacuumKind::Minkowski);
      }
      const BlackHole bh(cfg.mass);
      const double rA = alice_radius(cfg), rB = rA + cfg.dab;
      if (!(rA > bh.rs())) throw ConfigError("SS needs both detectors outside the horizon");
      auto peak = [&](double r) {
        return std::sqrt(metric_function(bh, r)) * (cfg.slice - pg_time_offset(bh, r));
      };
      return finish({cfg.gap, 1.0, peak(rA), static_worldline(bh, rA)},
                    {cfg.gap, 1.0, peak(rB), static_worldline(bh, rB)}, cfg.vacuum);
    }
    case ScenarioKind::FS: {
      if (cfg.vacuum == VacuumKind::Minkowski)
        throw ConfigError("FS needs a black hole vacuum");
      const BlackHole bh(cfg.mass);
      const double rA = alice_radius(cfg);
      if (!(rA > 0.0)) throw ConfigError("Alice's radius must be positive");
      const double tauA = ff_peak_time(bh, rA);
      const double rB = cfg.bob_from_horizon ? bh.rs() + *cfg.bob_from_horizon : rA + cfg.dab;
      if (!(rB > bh.rs())) throw ConfigError("FS needs Bob outside the horizon");
      const double tauB = cfg.delta + std::sqrt(metric_function(bh, rB)) *
                                          (tauA - pg_time_offset(bh, rB));
      DetectorParams A{cfg.gap, 1.0, tauA, infall_worldline(bh)};
      DetectorParams B{cfg.gap, 1.0, tauB, static_worldline(bh, rB)};
      forbid_boulware_interior(cfg, bh, A);
      return finish(A, B, cfg.vacuum);
    }
    case ScenarioKind::FF: {
      if (cfg.vacuum == VacuumKind::Minkowski)
        throw ConfigError("FF needs a black hole vacuum");
      const BlackHole bh(cfg.mass);
      const double dA = alice_radius(cfg);
      if (!(dA > 0.0)) throw ConfigError("Alice's radius must be positive");
      const Worldline wl = infall_worldline(bh);
      DetectorParams A{cfg.gap, 1.0, ff_peak_time(bh, dA), wl};
      DetectorParams B{cfg.gap, 1.0, ff_peak_time(bh, dA + cfg.dab), wl};
      forbid_boulware_interior(cfg, bh, A);
      forbid_boulware_interior(cfg, bh, B);
      return finish(A, B, cfg.vacuum);
    }
    case ScenarioKind::FlatBoost: {
      double v = 0.0;
      if (cfg.speed) {
        v = *cfg.speed;
      } else {
        const BlackHole bh(cfg.mass);
        const double rA = alice_radius(cfg);
        v = kinematic_relative_velocity(bh, rA, rA + cfg.dab);
      }
      if (!(v >= 0.0 && v < 1.0)) throw ConfigError("FlatBoost speed must lie in [0, 1)");
      // Peaks simultaneous in Alice's rest frame, separated there by d_AB.
      const double gamma = 1.0 / std::sqrt(1.0 - v * v);
      return finish({cfg.gap, 1.0, 0.0, minkowski_boosted_worldline(0.0, v)},
                    {cfg.gap, 1.0, -v * gamma * cfg.dab,
                     minkowski_static_worldline(gamma * cfg.dab)},
                    VacuumKind::Minkowski);
    }
  }
  throw ConfigError("unknown scenario kind");
}

std::string ResultRow::diagnostics() const {
  std::string out;
  for (const auto& l : ladders) out += l.to_text();
  if (!error.empty()) out += "error: " + error + "\n";
  return out;
}

namespace {

ResultRow compute(const ScenarioConfig& cfg, bool strict) {
  const PairSetup p = build_pair(cfg);
  const QuadratureSpec& spec = cfg.quadrature;
  const VacuumKind vac = p.ctx.vacuum;
  const int n0 = base_nodes(p.A, p.B, vac, spec);
  QuadratureSpec espec = spec;
  espec.abs_tol = std::max(espec.abs_tol, kSignallingFloor);

  ResultRow row;
  row.ladders.push_back(run_ladder(local_evaluator(p.A, p.A, vac, spec), spec, "L_AA", n0));
  row.ladders.push_back(run_ladder(local_evaluator(p.B, p.B, vac, spec), spec, "L_BB", n0));
  row.ladders.push_back(run_ladder(local_evaluator(p.A, p.B, vac, spec), spec, "L_AB", n0));
  row.ladders.push_back(run_ladder(nonlocal_evaluator(p.A, p.B, vac, spec), spec, "M", n0));
  row.ladders.push_back(run_ladder(signalling_evaluator(p.A, p.B, vac, espec), espec, "E", n0));

  row.converged = true;
  std::string failed;
  for (const auto& l : row.ladders) {
    row.rungs = std::max<int>(row.rungs, static_cast<int>(l.rungs.size()));
    if (!l.converged) {
      if (strict) throw ConvergenceFailure(l);
      row.converged = false;
      failed += (failed.empty() ? "" : ", ") + l.label;
    }
  }
  if (!row.converged) row.error = "no convergence for " + failed;

  PairMatrix pm;
  pm.L_AA = row.ladders[0].rungs.back().estimate;
  pm.L_BB = row.ladders[1].rungs.back().estimate;
  pm.L_AB = row.ladders[2].rungs.back().estimate;
  pm.M = row.ladders[3].rungs.back().estimate;
  row.L_AA = pm.L_AA.real();
  row.L_BB = pm.L_BB.real();
  row.abs_L_AB = std::abs(pm.L_AB);
  row.abs_M = std::abs(pm.M);
  row.C = concurrence(pm);
  row.I = mutual_information(pm, cfg.lambda);
  row.E = 0.5 * row.ladders[4].rungs.back().estimate.imag();
  row.absE = std::abs(row.E);
  return row;
}

}  // namespace

ResultRow evaluate(const ScenarioConfig& cfg) { return compute(cfg, true); }

ResultRow evaluate_row(const ScenarioConfig& cfg) {
  try {
    return compute(cfg, false);
  } catch (const std::exception& e) {
    ResultRow row;
    row.converged = false;
    row.error = e.what();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.C = row.I = row.absE = row.E = row.L_AA = row.L_BB = row.abs_L_AB = row.abs_M = nan;
    return row;
  }
}

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Position: return "dist";
    case SweepAxis::Delta: return "delta";
    case SweepAxis::Mass: return "mass";
    case SweepAxis::Gap: return "gap";
    case SweepAxis::Dab: return "dab";
    case SweepAxis::Lambda: return "lambda";
    case SweepAxis::Speed: return "speed";
    case SweepAxis::BobFromHorizon: return "bob_dist";
    case SweepAxis::Slice: return "slice";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::Position, SweepAxis::Delta, SweepAxis::Mass, SweepAxis::Gap,
                      SweepAxis::Dab, SweepAxis::Lambda, SweepAxis::Speed,
                      SweepAxis::BobFromHorizon, SweepAxis::Slice})
    if (to_string(a) == name) return a;
  throw ConfigError("unknown sweep axis '" + name +
                    "' (dist, delta, mass, gap, dab, lambda, speed, bob_dist, slice)");
}

void set_axis(ScenarioConfig& cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Position: cfg.position = value; break;
    case SweepAxis::Delta: cfg.delta = value; break;
    case SweepAxis::Mass: cfg.mass = value; break;
    case SweepAxis::Gap: cfg.gap = value; break;
    case SweepAxis::Dab: cfg.dab = value; break;
    case SweepAxis::Lambda: cfg.lambda = value; break;
    case SweepAxis::Speed: cfg.speed = value; break;
    case SweepAxis::BobFromHorizon: cfg.bob_from_horizon = value; break;
    case SweepAxis::Slice: cfg.slice = value; break;
  }
}

std::vector<ResultRow> sweep(const ScenarioConfig& cfg, SweepAxis axis,
                             const std::vector<double>& values) {
  std::vector<ResultRow> rows(values.size());
  auto one = [&](std::size_t i) {
    ScenarioConfig c = cfg;
    set_axis(c, axis, values[i]);
    rows[i] = evaluate_row(c);
    rows[i].axis_value = values[i];
  };
  const int threads = std::min<int>(worker_threads(), static_cast<int>(values.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) one(i);
    return rows;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      set_worker_thread(true);
      for (std::size_t i = t; i < values.size(); i += threads) one(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0 && b > 0.0)) throw ConfigError("log spacing needs positive endpoints");
  std::vector<double> v = linspace(std::log(a), std::log(b), n);
  for (double& x : v) x = std::exp(x);
  if (n > 1) {
    v.front() = a;
    v.back() = b;
  }
  return v;
}

}  // namespace harvest

#include <utility>

#include "harvest/scenario.hpp"

namespace harvest {

namespace {

ScenarioConfig base(ScenarioKind kind, VacuumKind vac, double mass, double gap, double dab) {
  ScenarioConfig c;
  c.kind = kind;
  c.vacuum = vac;
  c.mass = mass;
  c.gap = gap;
  c.dab = dab;
  return c;
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  const auto U = VacuumKind::Unruh, H = VacuumKind::HartleHawking, B = VacuumKind::Boulware;
  const auto SS = ScenarioKind::SS, FS = ScenarioKind::FS;

  auto fig2 = [&](const char* name, const char* what, double lo, double hi) {
    Preset p{name, what, {}};
    const auto d = logspace(lo, hi, 20);
    p.series.push_back({"ss-unruh", base(SS, U, 5, 2, 2), SweepAxis::Position, d});
    p.series.push_back({"fs-unruh", base(FS, U, 5, 2, 2), SweepAxis::Position, d});
    p.series.push_back({"ss-hh", base(SS, H, 5, 2, 2), SweepAxis::Position, d});
    p.series.push_back({"fs-hh", base(FS, H, 5, 2, 2), SweepAxis::Position, d});
    return p;
  };
  out.push_back(fig2("fig2a", "SS vs FS near the horizon, Unruh and Hartle-Hawking", 1e-3, 1.0));
  out.push_back(fig2("fig2b", "SS vs FS away from the horizon, Unruh and Hartle-Hawking", 1.0, 100.0));

  auto fig3 = [&](const char* name, const char* what, double lo, double hi) {
    Preset p{name, what, {}};
    const auto d = logspace(lo, hi, 20);
    for (double m : {5.0, 10.0, 20.0}) {
      const std::string tag = "-m" + std::to_string(static_cast<int>(m));
      p.series.push_back({"ss" + tag, base(SS, U, m, 2, 2), SweepAxis::Position, d});
      p.series.push_back({"fs" + tag, base(FS, U, m, 2, 2), SweepAxis::Position, d});
    }
    return p;
  };
  out.push_back(fig3("fig3a", "mass dependence near the horizon (Unruh)", 1e-3, 1.0));
  out.push_back(fig3("fig3b", "mass dependence away from the horizon (Unruh)", 1.0, 100.0));

  {
    Preset p{"fig4", "Boulware FS against a boosted flat-space pair at the kinematic velocity", {}};
    const auto d = logspace(10.0, 1000.0, 21);
    p.series.push_back({"fs-boulware", base(FS, B, 1, 2, 2), SweepAxis::Position, d});
    p.series.push_back(
        {"flatboost", base(ScenarioKind::FlatBoost, VacuumKind::Minkowski, 1, 2, 2),
         SweepAxis::Position, d});
    out.push_back(std::move(p));
  }
  {
    Preset p{"fig5b", "signalling estimator against Bob's switching delay", {}};
    ScenarioConfig c = base(FS, U, 5, 2, 5);
    c.position = 1.0;
    p.series.push_back({"fs-unruh", c, SweepAxis::Delta, linspace(-40.0, 160.0, 201)});
    out.push_back(std::move(p));
  }
  {
    Preset p{"fig6", "concurrence and signalling against distance from the horizon", {}};
    const auto d = logspace(1e-2, 100.0, 25);
    p.series.push_back({"gap2-dab2", base(FS, U, 5, 2, 2), SweepAxis::Position, d});
    ScenarioConfig c = base(FS, U, 5, 5, 5);
    c.delta = 1.0;
    p.series.push_back({"gap5-dab5-delta1", c, SweepAxis::Position, d});
    out.push_back(std::move(p));
  }
  {
    Preset p{"fig7", "Alice inside the horizon, Bob outside, against the delay", {}};
    ScenarioConfig c = base(FS, U, 10, 2, 0);
    c.origin = PositionOrigin::Singularity;
    c.position = 14.0;
    c.bob_from_horizon = 7.0;
    p.series.push_back({"fs-unruh", c, SweepAxis::Delta, linspace(0.0, 10.0, 21)});
    out.push_back(std::move(p));
  }
  {
    Preset p{"fig9", "two free-falling detectors on one geodesic across the horizon", {}};
    ScenarioConfig c = base(ScenarioKind::FF, U, 50, 5, 5);
    c.origin = PositionOrigin::Singularity;
    p.series.push_back({"ff-unruh", c, SweepAxis::Position, linspace(30.0, 200.0, 18)});
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace harvest

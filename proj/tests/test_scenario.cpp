#include <doctest.h>

#include <cmath>
#include <set>

#include "harvest/errors.hpp"
#include "harvest/geometry.hpp"
#include "harvest/scenario.hpp"

using namespace harvest;

namespace {

ScenarioConfig make(ScenarioKind k, VacuumKind v, double mass, double pos, double gap = 2.0,
                    double dab = 2.0) {
  ScenarioConfig c;
  c.kind = k;
  c.vacuum = v;
  c.mass = mass;
  c.position = pos;
  c.gap = gap;
  c.dab = dab;
  return c;
}

}  // namespace

TEST_CASE("SS placement") {
  const auto c = make(ScenarioKind::SS, VacuumKind::Unruh, 5.0, 10.0);
  const PairSetup p = build_pair(c);
  CHECK(p.A.worldline.radius() == doctest::Approx(20.0));
  CHECK(p.B.worldline.radius() == doctest::Approx(22.0));
  CHECK(std::abs(p.A.worldline.pg_time(p.A.peak)) < 1e-10);
  CHECK(std::abs(p.B.worldline.pg_time(p.B.peak)) < 1e-10);
  auto shifted = c;
  shifted.slice = 4.0;
  const PairSetup q = build_pair(shifted);
  CHECK(q.B.worldline.pg_time(q.B.peak) == doctest::Approx(4.0));
}

TEST_CASE("FS placement") {
  auto c = make(ScenarioKind::FS, VacuumKind::Unruh, 5.0, 1.0, 2.0, 5.0);
  const PairSetup p = build_pair(c);
  const BlackHole bh(5.0);
  CHECK(p.A.peak == doctest::Approx(ff_peak_time(bh, 11.0)));
  CHECK(p.B.worldline.radius() == doctest::Approx(16.0));
  CHECK(std::abs(p.B.worldline.pg_time(p.B.peak) - p.A.peak) < 1e-10);
  c.delta = 3.0;
  const PairSetup d = build_pair(c);
  CHECK(delta_parameter(bh, d.A.peak, 16.0, d.B.peak) == doctest::Approx(3.0));
  // interior Alice with Bob fixed from the horizon
  auto in = make(ScenarioKind::FS, VacuumKind::Unruh, 10.0, 14.0);
  in.origin = PositionOrigin::Singularity;
  in.bob_from_horizon = 7.0;
  const PairSetup q = build_pair(in);
  CHECK(infall_radius(BlackHole(10.0), q.A.peak) == doctest::Approx(14.0));
  CHECK(q.B.worldline.radius() == doctest::Approx(27.0));
}

TEST_CASE("FF placement") {
  auto c = make(ScenarioKind::FF, VacuumKind::Unruh, 50.0, 100.0, 5.0, 5.0);
  c.origin = PositionOrigin::Singularity;
  const PairSetup p = build_pair(c);
  CHECK(p.A.peak == doctest::Approx(-200.0 / 3.0));
  CHECK(p.B.peak == doctest::Approx(ff_peak_time(BlackHole(50.0), 105.0)));
  CHECK(p.A.worldline.same_trajectory(p.B.worldline));
  CHECK(p.B.peak < p.A.peak);
}

TEST_CASE("FlatBoost placement") {
  auto c = make(ScenarioKind::FlatBoost, VacuumKind::Minkowski, 1.0, 500.0);
  const PairSetup p = build_pair(c);
  const double v = kinematic_relative_velocity(BlackHole(1.0), 502.0, 504.0);
  CHECK(p.A.worldline.speed() == doctest::Approx(v));
  c.speed = 0.0;
  const PairSetup s = build_pair(c);
  CHECK(s.A.worldline.speed() == 0.0);
  CHECK(std::abs(s.B.worldline.at(s.B.peak).r - s.A.worldline.at(s.A.peak).r) == doctest::Approx(2.0));
  c.speed = 1.0;
  CHECK_THROWS_AS(build_pair(c), ConfigError);
}

TEST_CASE("configuration errors") {
  auto b = make(ScenarioKind::FS, VacuumKind::Boulware, 5.0, 1.0);
  CHECK_THROWS_AS(build_pair(b), ConfigError);
  b.position = 300.0;
  CHECK_NOTHROW(build_pair(b));
  CHECK_THROWS_AS(parse_scenario("ssf"), ConfigError);
  CHECK_THROWS_AS(parse_axis("width"), ConfigError);
  CHECK(parse_axis("dist") == SweepAxis::Position);
}

TEST_CASE("far from the hole Boulware SS looks like flat space") {
  auto far = make(ScenarioKind::SS, VacuumKind::Boulware, 5.0, 1e5);
  ScenarioConfig flat;
  flat.kind = ScenarioKind::FlatBoost;
  flat.vacuum = VacuumKind::Minkowski;
  flat.speed = 0.0;
  const double cf = evaluate(flat).C;
  CHECK(cf > 0.0);
  CHECK(evaluate(far).C == doctest::Approx(cf).epsilon(0.01));
}

TEST_CASE("near-horizon shadow and mass ordering") {
  const auto fs = evaluate(make(ScenarioKind::FS, VacuumKind::Unruh, 5.0, 0.01));
  CHECK(fs.converged);
  CHECK(fs.C == 0.0);
  CHECK(fs.I > 0.0);
  double prev = INFINITY;
  for (double m : {5.0, 10.0, 20.0}) {
    const double c = evaluate(make(ScenarioKind::SS, VacuumKind::Unruh, m, 0.1)).C;
    CHECK(c > 0.0);
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("sweeps") {
  CHECK(linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto l = logspace(1.0, 100.0, 3);
  CHECK(l[1] == doctest::Approx(10.0));
  CHECK(l.back() == 100.0);

  auto c = make(ScenarioKind::SS, VacuumKind::Unruh, 5.0, 1.0);
  const std::vector<double> vals{3.0, 1.0, 2.0};
  const auto rows = sweep(c, SweepAxis::Position, vals);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].axis_value == vals[i]);
    CHECK(rows[i].converged);
    CHECK(rows[i].L_AA > 0.0);
  }
  const auto again = sweep(c, SweepAxis::Position, vals);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(again[i].C == rows[i].C);
  // a bad point becomes an error row, the rest still run
  const auto bad = sweep(c, SweepAxis::Position, {1.0, -50.0});
  CHECK(bad[0].converged);
  CHECK_FALSE(bad[1].converged);
  CHECK_FALSE(bad[1].error.empty());
}

TEST_CASE("presets") {
  std::set<std::string> names;
  for (const auto& p : presets()) names.insert(p.name);
  for (const char* n : {"fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5b", "fig6", "fig7", "fig9"})
    CHECK(names.count(n) == 1);
  CHECK(find_preset("fig10") == nullptr);

  const Preset* f2 = find_preset("fig2a");
  REQUIRE(f2);
  for (const auto& s : f2->series) {
    CHECK(s.config.mass == 5.0);
    CHECK(s.config.gap == 2.0);
    CHECK(s.config.dab == 2.0);
    CHECK(s.values.front() == doctest::Approx(1e-3));
    CHECK(s.values.back() == doctest::Approx(1.0));
  }
  const Preset* f7 = find_preset("fig7");
  REQUIRE(f7);
  const auto& c7 = f7->series.front().config;
  CHECK(c7.gap == 2.0);
  CHECK(c7.mass == 10.0);
  CHECK(c7.position == 14.0);
  CHECK(c7.origin == PositionOrigin::Singularity);
  CHECK(*c7.bob_from_horizon == 7.0);
  const Preset* f9 = find_preset("fig9");
  REQUIRE(f9);
  const auto& s9 = f9->series.front();
  CHECK(s9.config.kind == ScenarioKind::FF);
  CHECK(s9.config.gap == 5.0);
  CHECK(s9.config.mass == 50.0);
  CHECK(s9.config.dab == 5.0);
  CHECK(s9.values.front() < 100.0);
  CHECK(s9.values.back() > 100.0);
  const Preset* f5 = find_preset("fig5b");
  REQUIRE(f5);
  CHECK(f5->series.front().config.mass == 5.0);
  CHECK(f5->series.front().config.dab == 5.0);
  CHECK(f5->series.front().config.position == 1.0);
  CHECK(f5->series.front().axis == SweepAxis::Delta);
}

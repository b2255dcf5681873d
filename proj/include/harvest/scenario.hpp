#pragma once

// Detector placement protocols and parameter sweeps.

#include <optional>
#include <string>
#include <vector>

#include "harvest/detector_pair.hpp"

namespace harvest {

enum class ScenarioKind { SS, FS, FF, FlatBoost };
// Which point Alice's position parameter is measured from.
enum class PositionOrigin { Horizon, Singularity };

std::string to_string(ScenarioKind k);
ScenarioKind parse_scenario(const std::string& name);

// All quantities in units of sigma.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::SS;
  VacuumKind vacuum = VacuumKind::Unruh;
  double mass = 5.0;
  double gap = 2.0;
  double dab = 2.0;
  double position = 1.0;
  PositionOrigin origin = PositionOrigin::Horizon;
  // FS only: fixes Bob at r_s + bob_from_horizon instead of r_A + d_AB.
  std::optional<double> bob_from_horizon;
  double delta = 0.0;
  // SS only: PG time of the common slice through both peaks.
  double slice = 0.0;
  // FlatBoost only: overrides the kinematic relative velocity.
  std::optional<double> speed;
  double lambda = 0.01;
  QuadratureSpec quadrature;
};

struct PairSetup {
  DetectorParams A;
  DetectorParams B;
  CorrelatorContext ctx;
};

// Alice's areal radius (or flat position for FlatBoost) from the position parameter.
double alice_radius(const ScenarioConfig& cfg);
PairSetup build_pair(const ScenarioConfig& cfg);

struct ResultRow {
  std::string series;
  double axis_value = 0.0;
  double C = 0.0;      // per lambda^2
  double I = 0.0;      // per lambda^2 at cfg.lambda
  double absE = 0.0;   // per lambda^2
  double L_AA = 0.0;
  double L_BB = 0.0;
  double abs_L_AB = 0.0;
  double abs_M = 0.0;
  double E = 0.0;      // signed
  bool converged = false;
  int rungs = 0;       // largest ladder length among the matrix elements
  std::string error;   // empty on success
  std::vector<LadderReport> ladders;

  std::string diagnostics() const;
};

// Throws ConvergenceFailure naming the element when any ladder fails.
ResultRow evaluate(const ScenarioConfig& cfg);
// Same, but numerical failures become an error row carrying the ladders.
ResultRow evaluate_row(const ScenarioConfig& cfg);

enum class SweepAxis { Position, Delta, Mass, Gap, Dab, Lambda, Speed, BobFromHorizon, Slice };

std::string to_string(SweepAxis a);
SweepAxis parse_axis(const std::string& name);
void set_axis(ScenarioConfig& cfg, SweepAxis axis, double value);

// One row per value, in input order; points run in parallel.
std::vector<ResultRow> sweep(const ScenarioConfig& cfg, SweepAxis axis,
                             const std::vector<double>& values);

struct Series {
  std::string label;
  ScenarioConfig config;
  SweepAxis axis;
  std::vector<double> values;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<Series> series;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);

}  // namespace harvest

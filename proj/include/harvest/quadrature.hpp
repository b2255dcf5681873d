#pragma once

// Tensor Gauss-Legendre engine, the smooth step, contour panels and the
// (N, eps, k) refinement ladder.

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harvest/worldline.hpp"

namespace harvest {

struct QuadratureSpec {
  double epsilon = 1e-8;
  double k_sharpness = 1e9;
  int nodes = 400;
  double support_radius = 5.0;
  double rel_tol = 1e-3;
  // Absolute floor on the rung-to-rung change; useful for quantities that vanish.
  double abs_tol = 0.0;
  int max_refinements = 3;
  // Largest excursion of the deformed contour off the real axis, in sigma.
  double contour_depth = 0.5;
  int max_nodes = 4096;
  // Richardson-extrapolate the O(eps) regulator bias between rungs.
  bool extrapolate = false;

  void validate() const;
};

double smooth_step(double k, double z);
cdouble smooth_step(double k, cdouble z);

struct GaussRule {
  Eigen::VectorXd x;  // nodes on [-1, 1]
  Eigen::VectorXd w;
};

// Cached and thread-safe; the reference stays valid for the program lifetime.
const GaussRule& gauss_legendre(int n);

// Plain real-axis tensor rule.
using Integrand2D = std::function<cdouble(double, double)>;
cdouble integrate_2d(const Integrand2D& f, Interval boxA, Interval boxB, int n);

// Quadrature points of a complex path.
struct PathNodes {
  std::vector<cdouble> z;
  std::vector<cdouble> w;  // includes dz/ds
  double max_spacing = 0.0;
};

// Bump over seg: z(s) = s + i*direction*depth*tanh((s-lo)/depth)*tanh((hi-s)/depth).
// direction = -1 pushes into the lower half plane. A positive graded_h0 adds
// geometrically growing panels, starting at width h0, next to one end.
PathNodes bump_path(Interval seg, double depth, int direction, int n, double graded_h0 = 0.0,
                    bool grade_at_hi = false);

// Sums row(j) for j in [0, rows) with a fixed summation order, optionally in parallel.
cdouble sum_rows(int rows, const std::function<cdouble(int)>& row);

// HH_THREADS, else hardware concurrency.
int worker_threads();

// Marks the calling thread as a pool worker so nested sum_rows calls stay serial.
void set_worker_thread(bool on);

struct Rung {
  int nodes;
  double epsilon;
  double k;
};

struct RungOutcome {
  cdouble value;
  double depth = 0.0;        // contour excursion used (0 on the real axis)
  double max_spacing = 0.0;  // largest node gap along the inner path
};

struct RungRecord {
  Rung rung;
  RungOutcome outcome;
  cdouble estimate;      // extrapolated value when enabled, else the raw value
  double change = -1.0;  // |estimate - previous estimate|, < 0 on the first rung
  double rel_change = -1.0;
  bool resolved = true;  // node spacing finer than the contour clearance
};

struct LadderReport {
  std::string label;
  std::vector<RungRecord> rungs;
  bool converged = false;
  double achieved_tol = 0.0;
  // Filled when the ladder did not converge: which knob moved the value more.
  std::string attribution;

  std::string to_text() const;
};

struct CertifiedValue {
  cdouble value;
  double achieved_tol;
  LadderReport ladder;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  explicit ConvergenceFailure(LadderReport report);
  const LadderReport& report() const { return report_; }

 private:
  LadderReport report_;
};

using RungEvaluator = std::function<RungOutcome(const Rung&)>;

// Runs the ladder (N, eps, k) -> (2N, eps/2, 2k) -> ... up to max_refinements.
// The node count of the first rung is taken from base_nodes.
LadderReport run_ladder(const RungEvaluator& eval, const QuadratureSpec& spec,
                        const std::string& label, int base_nodes);

// Throws ConvergenceFailure when the ladder does not settle.
CertifiedValue certify(const RungEvaluator& eval, const QuadratureSpec& spec,
                       const std::string& label, int base_nodes);

// Real-axis certified integral of f(tau, tau2, eps, k).
using RegulatedIntegrand = std::function<cdouble(double, double, double, double)>;
CertifiedValue certified_integral(const RegulatedIntegrand& f, Interval boxA, Interval boxB,
                                  const QuadratureSpec& spec);

// Node budget that keeps >= 20 nodes per oscillation of exp(i gap (tau +- tau2)).
int oscillation_budget(const QuadratureSpec& spec, double gap, double width = 1.0);

}  // namespace harvest

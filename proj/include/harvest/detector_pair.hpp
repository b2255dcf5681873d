#pragma once

// Leading-order two-detector state: L_ij, M, concurrence, mutual information
// and the signalling estimator. Everything is reported per lambda^2.

#include <Eigen/Core>
#include <vector>

#include "harvest/correlator.hpp"
#include "harvest/quadrature.hpp"

namespace harvest {

struct DetectorParams {
  double gap;          // Omega
  double width = 1.0;  // sigma
  double peak = 0.0;   // tau_0
  Worldline worldline;

  double switching(double tau) const;
  cdouble switching(cdouble tau) const;
  Interval support(double radius) const { return {peak - radius * width, peak + radius * width}; }
  // Throws DomainError when the strong support leaves the worldline domain.
  void validate(double radius) const;
};

struct PairMatrix {
  cdouble L_AA, L_BB, L_AB, M;
  std::vector<LadderReport> ladders;
};

// Depth of the contour deformation for integrals whose first slot runs on det.
double contour_depth(const DetectorParams& det, VacuumKind vac, const QuadratureSpec& spec);

// Single-rung evaluators, exposed so callers can run the ladder without throwing.
RungEvaluator local_evaluator(const DetectorParams& detI, const DetectorParams& detJ,
                              VacuumKind vac, const QuadratureSpec& spec);
RungEvaluator nonlocal_evaluator(const DetectorParams& detA, const DetectorParams& detB,
                                 VacuumKind vac, const QuadratureSpec& spec);
// Integral of chi_A chi_B times the commutator kernel; E = Im(value)/2.
RungEvaluator signalling_evaluator(const DetectorParams& detA, const DetectorParams& detB,
                                   VacuumKind vac, const QuadratureSpec& spec);

// First rung node count: the oscillation budget, raised until the real-axis
// variables of every pair integral resolve the nearest pole.
int base_nodes(const DetectorParams& detA, const DetectorParams& detB, VacuumKind vac,
               const QuadratureSpec& spec);

CertifiedValue local_term(const DetectorParams& detI, const DetectorParams& detJ, VacuumKind vac,
                          const QuadratureSpec& spec);
CertifiedValue nonlocal_term(const DetectorParams& detA, const DetectorParams& detB,
                             VacuumKind vac, const QuadratureSpec& spec);
CertifiedValue signalling_integral(const DetectorParams& detA, const DetectorParams& detB,
                                   VacuumKind vac, const QuadratureSpec& spec);
double signalling_estimator(const DetectorParams& detA, const DetectorParams& detB,
                            VacuumKind vac, const QuadratureSpec& spec);

// Smallest change of the signalling integral treated as noise. The two
// orderings are O(1e-2) each and cancel outside the light cone; what is left
// below this is roundoff plus eps leakage.
inline constexpr double kSignallingFloor = 1e-10;

Eigen::Matrix4cd assemble_density_matrix(const PairMatrix& pm, double lambda);
double concurrence(const PairMatrix& pm);
// I/lambda^2. The ln(lambda^2) pieces cancel because L_+ + L_- = L_AA + L_BB,
// so the per-lambda^2 value does not depend on the reporting coupling.
double mutual_information(const PairMatrix& pm);
double mutual_information(const PairMatrix& pm, double lambda);

}  // namespace harvest

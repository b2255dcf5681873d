#pragma once

// Pulled-back derivative-coupling Wightman functions for the massless field
// in (1+1) dimensions.

#include <complex>
#include <string>

#include "harvest/worldline.hpp"

namespace harvest {

enum class VacuumKind { Boulware, Unruh, HartleHawking, Minkowski };

std::string to_string(VacuumKind k);
VacuumKind parse_vacuum(const std::string& name);

struct CorrelatorContext {
  VacuumKind vacuum;
  Worldline wlA;
  Worldline wlB;
  double epsilon;

  CorrelatorContext(VacuumKind vac, Worldline a, Worldline b, double eps);
  CorrelatorContext swapped() const { return {vacuum, wlB, wlA, epsilon}; }
};

// Point-level kernel shared by the context API and the quadrature engine.
// rs is ignored for the Minkowski vacuum.
cdouble wightman(VacuumKind vac, double rs, double eps, const WorldlinePoint<cdouble>& p,
                 const WorldlinePoint<cdouble>& q);

// Same kernel, split into per-point data so that a pair costs a few complex
// multiplications. Exponential sectors keep e^{+-a/2} measured from a shared
// reference value, which keeps far detectors in range.
struct KernelSector {
  cdouble g;  // null velocity (du/dtau, or dU/dtau e^{-a} on Kruskal sectors)
  cdouble p;  // null coordinate, or e^{a/2}
  cdouble m;  // e^{-a/2}
};

struct KernelPoint {
  KernelSector s[2];  // outgoing, ingoing
};

class PairKernel {
 public:
  // ref is a representative point of the integration region.
  PairKernel(VacuumKind vac, double rs, double eps, const WorldlinePoint<double>& ref);

  KernelPoint prepare(const WorldlinePoint<cdouble>& p) const;
  // Whether sector k (0 outgoing, 1 ingoing) is stored in exponential form.
  bool kruskal(int k) const { return kruskal_[k]; }
  cdouble operator()(const KernelPoint& p, const KernelPoint& q) const {
    return pre_ * (term(0, p.s[0], q.s[0]) + term(1, p.s[1], q.s[1]));
  }

 private:
  cdouble term(int k, const KernelSector& a, const KernelSector& b) const {
    cdouble d;
    if (kruskal_[k])
      d = sign_[k] * two_rs_ * (a.p * b.m - a.m * b.p) - cdouble(0.0, eps_[k]) * (a.m * b.m);
    else
      d = a.p - b.p - cdouble(0.0, eps_[k]);
    return a.g * b.g / (d * d);
  }

  VacuumKind vac_;
  double rs_;
  double two_rs_;
  double pre_;
  bool kruskal_[2];
  double sign_[2] = {-1.0, 1.0};
  double shift_[2] = {0.0, 0.0};
  double eps_[2];
};

WorldlinePoint<cdouble> complexify(const WorldlinePoint<double>& p);

// A(tau on wlA, tau2 on wlB)
cdouble two_point(const CorrelatorContext& ctx, double tau, double tau2);
cdouble two_point(const CorrelatorContext& ctx, cdouble tau, cdouble tau2);

// A(tau, tau2) - A_swapped(tau2, tau); a c-number, independent of the vacuum as eps -> 0.
cdouble commutator_kernel(const CorrelatorContext& ctx, double tau, double tau2);

}  // namespace harvest

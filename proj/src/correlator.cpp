#include "harvest/correlator.hpp"

#include <cmath>
#include <numbers>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

constexpr cdouble I{0.0, 1.0};

cdouble pole_term(cdouble dy1, cdouble dy2, cdouble y1, cdouble y2, double eps) {
  const cdouble d = y1 - y2 - I * eps;
  return dy1 * dy2 / (d * d);
}

// U and dU/dtau, from u when the Kruskal fields overflowed.
bool kruskal_u(const WorldlinePoint<cdouble>& p, double rs, cdouble& U, cdouble& dU) {
  if (p.has_kruskal) {
    U = p.U;
    dU = p.dU;
    return true;
  }
  if (!p.has_u) return false;
  U = -2.0 * rs * std::exp(-p.u / (2.0 * rs));
  dU = -U / (2.0 * rs) * p.du;
  return std::isfinite(std::abs(U)) && std::isfinite(std::abs(dU));
}

bool kruskal_v(const WorldlinePoint<cdouble>& p, double rs, cdouble& V, cdouble& dV) {
  if (p.has_kruskal) {
    V = p.V;
    dV = p.dV;
    return true;
  }
  if (!p.has_v) return false;
  V = 2.0 * rs * std::exp(p.v / (2.0 * rs));
  dV = V / (2.0 * rs) * p.dv;
  return std::isfinite(std::abs(V)) && std::isfinite(std::abs(dV));
}

// dU dU'/(U - U' - i eps)^2. When both points carry u the difference is
// rewritten through sinh so that far-away detectors never form U itself.
cdouble sector_U(const WorldlinePoint<cdouble>& p, const WorldlinePoint<cdouble>& q, double rs,
                 double eps) {
  if (p.has_u && q.has_u) {
    const cdouble a = -p.u / (2.0 * rs), b = -q.u / (2.0 * rs);
    const cdouble d = -4.0 * rs * std::sinh(0.5 * (a - b)) - I * eps * std::exp(-0.5 * (a + b));
    return p.du * q.du / (d * d);
  }
  cdouble U1, dU1, U2, dU2;
  if (!kruskal_u(p, rs, U1, dU1) || !kruskal_u(q, rs, U2, dU2))
    throw PatchError("Kruskal U unavailable on one of the worldline points");
  return pole_term(dU1, dU2, U1, U2, eps);
}

cdouble sector_V(const WorldlinePoint<cdouble>& p, const WorldlinePoint<cdouble>& q, double rs,
                 double eps) {
  if (p.has_v && q.has_v) {
    const cdouble c = p.v / (2.0 * rs), e = q.v / (2.0 * rs);
    const cdouble d = 4.0 * rs * std::sinh(0.5 * (c - e)) - I * eps * std::exp(-0.5 * (c + e));
    return p.dv * q.dv / (d * d);
  }
  cdouble V1, dV1, V2, dV2;
  if (!kruskal_v(p, rs, V1, dV1) || !kruskal_v(q, rs, V2, dV2))
    throw PatchError("Kruskal V unavailable on one of the worldline points");
  return pole_term(dV1, dV2, V1, V2, eps);
}

void require_u(const WorldlinePoint<cdouble>& p, const WorldlinePoint<cdouble>& q, VacuumKind vac) {
  if (!p.has_u || !q.has_u)
    throw PatchError(to_string(vac) +
                     " vacuum needs the exterior u coordinate, but a point lies inside the horizon");
}

void require_v(const WorldlinePoint<cdouble>& p, const WorldlinePoint<cdouble>& q) {
  if (!p.has_v || !q.has_v) throw PatchError("v coordinate unavailable on a worldline point");
}

}  // namespace

std::string to_string(VacuumKind k) {
  switch (k) {
    case VacuumKind::Boulware: return "boulware";
    case VacuumKind::Unruh: return "unruh";
    case VacuumKind::HartleHawking: return "hartle-hawking";
    case VacuumKind::Minkowski: return "minkowski";
  }
  return "?";
}

VacuumKind parse_vacuum(const std::string& name) {
  if (name == "boulware" || name == "B") return VacuumKind::Boulware;
  if (name == "unruh" || name == "U") return VacuumKind::Unruh;
  if (name == "hartle-hawking" || name == "hh" || name == "H") return VacuumKind::HartleHawking;
  if (name == "minkowski" || name == "M") return VacuumKind::Minkowski;
  throw ConfigError("unknown vacuum '" + name + "' (boulware, unruh, hartle-hawking, minkowski)");
}

CorrelatorContext::CorrelatorContext(VacuumKind vac, Worldline a, Worldline b, double eps)
    : vacuum(vac), wlA(std::move(a)), wlB(std::move(b)), epsilon(eps) {
  if (!(eps > 0.0)) throw DomainError("correlator epsilon must be positive");
  const bool flat = wlA.flat() && wlB.flat();
  if (vac == VacuumKind::Minkowski) {
    if (!flat) throw ConfigError("Minkowski vacuum needs Minkowski worldlines");
  } else {
    if (wlA.flat() || wlB.flat())
      throw ConfigError(to_string(vac) + " vacuum needs Schwarzschild worldlines");
    if (wlA.black_hole()->mass != wlB.black_hole()->mass)
      throw ConfigError("worldlines live in different black hole spacetimes");
  }
}

WorldlinePoint<cdouble> complexify(const WorldlinePoint<double>& p) {
  WorldlinePoint<cdouble> c;
  c.u = p.u;
  c.v = p.v;
  c.U = p.U;
  c.V = p.V;
  c.du = p.du;
  c.dv = p.dv;
  c.dU = p.dU;
  c.dV = p.dV;
  c.t_pg = p.t_pg;
  c.r = p.r;
  c.has_u = p.has_u;
  c.has_v = p.has_v;
  c.has_kruskal = p.has_kruskal;
  return c;
}

cdouble wightman(VacuumKind vac, double rs, double eps, const WorldlinePoint<cdouble>& p,
                 const WorldlinePoint<cdouble>& q) {
  constexpr double pre = -1.0 / (4.0 * std::numbers::pi);
  switch (vac) {
    case VacuumKind::Minkowski:
    case VacuumKind::Boulware:
      require_u(p, q, vac);
      require_v(p, q);
      return pre * (pole_term(p.du, q.du, p.u, q.u, eps) + pole_term(p.dv, q.dv, p.v, q.v, eps));
    case VacuumKind::Unruh:
      require_v(p, q);
      return pre * (sector_U(p, q, rs, eps) + pole_term(p.dv, q.dv, p.v, q.v, eps));
    case VacuumKind::HartleHawking:
      return pre * (sector_U(p, q, rs, eps) + sector_V(p, q, rs, eps));
  }
  return 0.0;
}

PairKernel::PairKernel(VacuumKind vac, double rs, double eps, const WorldlinePoint<double>& ref)
    : vac_(vac), rs_(rs), two_rs_(2.0 * rs), pre_(-1.0 / (4.0 * std::numbers::pi)) {
  kruskal_[0] = vac == VacuumKind::Unruh || vac == VacuumKind::HartleHawking;
  kruskal_[1] = vac == VacuumKind::HartleHawking;
  if (kruskal_[0]) {
    if (ref.has_u)
      shift_[0] = -ref.u / (2.0 * rs);
    else if (ref.has_kruskal)
      shift_[0] = std::log(std::abs(ref.U) / (2.0 * rs));
  }
  if (kruskal_[1] && ref.has_v) shift_[1] = ref.v / (2.0 * rs);
  // a reference on the horizon itself has U = 0
  for (double& sh : shift_)
    if (!std::isfinite(sh)) sh = 0.0;
  // Regulator measured in the reference point's own null coordinate: eps in
  // u (or v) there is eps e^{shift} in Kruskal units, which cancels the
  // e^{-shift} left over from pulling the shift out of the per-point factors.
  // A fixed Kruskal eps would blow up like e^{u/2rs} for late or near-horizon
  // detectors.
  for (double& e : eps_) e = eps;
}

KernelPoint PairKernel::prepare(const WorldlinePoint<cdouble>& p) const {
  KernelPoint out;
  KernelSector& o = out.s[0];
  if (kruskal_[0]) {
    cdouble a;
    if (p.has_u) {
      a = -p.u / (2.0 * rs_);
      o.g = p.du;
    } else if (p.has_kruskal) {
      a = std::log(-p.U / (2.0 * rs_));
      o.g = -2.0 * rs_ * p.dU / p.U;
    } else {
      throw PatchError("Kruskal U unavailable on a worldline point");
    }
    const cdouble h = 0.5 * (a - shift_[0]);
    o.p = std::exp(h);
    o.m = 1.0 / o.p;
  } else {
    if (!p.has_u)
      throw PatchError(to_string(vac_) +
                       " vacuum needs the exterior u coordinate, but a point lies inside the horizon");
    o.g = p.du;
    o.p = p.u;
  }
  KernelSector& i = out.s[1];
  if (!p.has_v) throw PatchError("v coordinate unavailable on a worldline point");
  i.g = p.dv;
  if (kruskal_[1]) {
    i.p = std::exp(0.5 * (p.v / (2.0 * rs_) - shift_[1]));
    i.m = 1.0 / i.p;
  } else {
    i.p = p.v;
  }
  return out;
}

namespace {
double rs_of(const CorrelatorContext& ctx) {
  return ctx.wlA.black_hole() ? ctx.wlA.black_hole()->rs() : 0.0;
}
}  // namespace

cdouble two_point(const CorrelatorContext& ctx, double tau, double tau2) {
  return wightman(ctx.vacuum, rs_of(ctx), ctx.epsilon, complexify(ctx.wlA.at(tau)),
                  complexify(ctx.wlB.at(tau2)));
}

cdouble two_point(const CorrelatorContext& ctx, cdouble tau, cdouble tau2) {
  return wightman(ctx.vacuum, rs_of(ctx), ctx.epsilon, ctx.wlA.at(tau), ctx.wlB.at(tau2));
}

cdouble commutator_kernel(const CorrelatorContext& ctx, double tau, double tau2) {
  return two_point(ctx, tau, tau2) - two_point(ctx.swapped(), tau2, tau);
}

}  // namespace harvest

#include "harvest/detector_pair.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

constexpr cdouble I{0.0, 1.0};

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double rs_of(const Worldline& w) { return w.black_hole() ? w.black_hole()->rs() : 0.0; }

struct Grid {
  std::vector<double> t;
  std::vector<double> w;
};

Grid real_grid(Interval seg, int n) {
  const GaussRule& g = gauss_legendre(n);
  Grid out;
  out.t.resize(n);
  out.w.resize(n);
  const double h = 0.5 * seg.length(), m = seg.mid();
  for (int i = 0; i < n; ++i) {
    out.t[i] = m + h * g.x[i];
    out.w[i] = h * g.w[i];
  }
  return out;
}

// log of the velocity of each null sector the vacuum uses, on the real axis.
double log_rate(const Worldline& wl, VacuumKind vac, double tau, double h) {
  const double rs = rs_of(wl);
  auto sectors = [&](double t, double out[2]) {
    const auto p = wl.at(t);
    const bool boulware = vac == VacuumKind::Boulware || vac == VacuumKind::Minkowski;
    if (boulware)
      out[0] = std::log(p.du);
    else
      out[0] = p.has_u ? std::log(p.du) - p.u / (2.0 * rs) : std::log(p.dU);
    if (vac == VacuumKind::HartleHawking)
      out[1] = std::log(p.dv) + p.v / (2.0 * rs);
    else
      out[1] = std::log(p.dv);
  };
  double a[2], b[2];
  sectors(tau + h, a);
  sectors(tau - h, b);
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])) / (2.0 * h);
}

std::string where(double tau) {
  std::ostringstream os;
  os.precision(12);
  os << tau;
  return os.str();
}

}  // namespace

double DetectorParams::switching(double tau) const {
  const double x = (tau - peak) / width;
  return std::exp(-x * x);
}

cdouble DetectorParams::switching(cdouble tau) const {
  const cdouble x = (tau - peak) / width;
  return std::exp(-x * x);
}

void DetectorParams::validate(double radius) const {
  if (!(width > 0.0)) throw DomainError("detector width must be positive");
  const Interval s = support(radius);
  const Interval d = worldline.domain();
  if (!(s.lo > d.lo && s.hi < d.hi)) {
    std::ostringstream os;
    os << "strong support [" << s.lo << ", " << s.hi << "] leaves the worldline domain";
    throw DomainError(os.str());
  }
}

double contour_depth(const DetectorParams& det, VacuumKind vac, const QuadratureSpec& spec) {
  double eta = spec.contour_depth * det.width;
  const Worldline& wl = det.worldline;
  if (wl.flat() || eta == 0.0) return eta;
  const Interval s = det.support(spec.support_radius);
  double rho = 0.0;
  const int samples = 129;
  const double h = 1e-4 * det.width;
  for (int i = 0; i < samples; ++i) {
    const double t = s.lo + (s.hi - s.lo) * (i + 0.5) / samples;
    rho = std::max(rho, log_rate(wl, vac, t, h));
  }
  // Exponential null maps repeat with imaginary period 2 pi / rate.
  if (rho > 0.0) eta = std::min(eta, 2.0 * std::numbers::pi / (3.0 * rho));
  if (wl.kind() == Worldline::Kind::Infall) {
    eta = std::min(eta, 0.4 * std::abs(s.hi));
    if (vac == VacuumKind::Boulware)
      eta = std::min(eta, 0.4 * (infall_horizon_time(*wl.black_hole()) - s.hi));
  }
  return std::max(eta, 0.0);
}

namespace {

PairKernel make_kernel(const DetectorParams& ref, VacuumKind vac, double eps) {
  return PairKernel(vac, rs_of(ref.worldline), eps, ref.worldline.at(ref.peak));
}

// Real-axis samples of each null sector: its coordinate (log form on Kruskal
// sectors, with the side of the horizon) and |velocity|.
struct SectorSamples {
  std::vector<double> coord[2], speed[2], side[2];
};

SectorSamples sector_samples(const DetectorParams& det, const PairKernel& kern, double radius) {
  SectorSamples out;
  const Interval s = det.support(radius);
  const int samples = 65;
  for (int i = 0; i < samples; ++i) {
    const double t = s.lo + s.length() * (i + 0.5) / samples;
    const KernelPoint p = kern.prepare(complexify(det.worldline.at(t)));
    for (int k = 0; k < 2; ++k) {
      const KernelSector& q = p.s[k];
      out.speed[k].push_back(std::abs(q.g));
      if (kern.kruskal(k)) {
        const cdouble a = 2.0 * std::log(q.p);
        out.coord[k].push_back(a.real());
        out.side[k].push_back(std::abs(std::remainder(a.imag(), 2.0 * std::numbers::pi)) > 1.0 ? 1.0 : 0.0);
      } else {
        out.coord[k].push_back(q.p.real());
        out.side[k].push_back(0.0);
      }
    }
  }
  return out;
}

// Distance from the real axis of the outer variable to the poles that a
// deformation of depth eta on the inner variable leaves behind. Poles sit where
// the sector coordinates agree, so velocities are compared at matched samples.
double clearance(double eta, const SectorSamples& in, const SectorSamples& out) {
  double ratio = INFINITY;
  for (int k = 0; k < 2; ++k) {
    const auto& co = out.coord[k];
    if (co.empty()) continue;
    const double lo = *std::min_element(co.begin(), co.end());
    const double hi = *std::max_element(co.begin(), co.end());
    for (std::size_t i = 0; i < in.coord[k].size(); ++i) {
      const double c = in.coord[k][i];
      if (c < lo || c > hi) continue;
      std::size_t best = 0;
      double dist = INFINITY;
      for (std::size_t j = 0; j < co.size(); ++j) {
        if (out.side[k][j] != in.side[k][i]) continue;
        if (std::abs(co[j] - c) < dist) {
          dist = std::abs(co[j] - c);
          best = j;
        }
      }
      if (dist < INFINITY && out.speed[k][best] > 0.0)
        ratio = std::min(ratio, in.speed[k][i] / out.speed[k][best]);
    }
  }
  return eta * ratio;
}

struct PairGeometry {
  double etaA, etaB;
  double clearA, clearB;  // pole clearance seen by a real-axis A (B) variable
  bool b_inner;           // M runs its contour on B
  double m_clear;
};

PairGeometry pair_geometry(const DetectorParams& detA, const DetectorParams& detB, VacuumKind vac,
                           const QuadratureSpec& spec) {
  const PairKernel kern = make_kernel(detA, vac, 1.0);
  const SectorSamples sa = sector_samples(detA, kern, spec.support_radius);
  const SectorSamples sb = sector_samples(detB, kern, spec.support_radius);
  PairGeometry g;
  g.etaA = contour_depth(detA, vac, spec);
  g.etaB = contour_depth(detB, vac, spec);
  g.clearA = clearance(g.etaB, sb, sa);
  g.clearB = clearance(g.etaA, sa, sb);
  g.b_inner = g.clearA > g.clearB;
  g.m_clear = std::max(g.clearA, g.clearB);
  return g;
}

}  // namespace

int base_nodes(const DetectorParams& detA, const DetectorParams& detB, VacuumKind vac,
               const QuadratureSpec& spec) {
  int n = std::max(oscillation_budget(spec, detA.gap, detA.width),
                   oscillation_budget(spec, detB.gap, detB.width));
  const PairGeometry g = pair_geometry(detA, detB, vac, spec);
  // Gauss-Legendre needs a few nodes per pole distance along the real line.
  const double len = 2.0 * spec.support_radius * std::max(detA.width, detB.width);
  const double tight = std::min({g.etaA + g.clearA, g.etaB + g.clearB, g.m_clear});
  if (tight > 0.0) n = std::max<double>(n, std::ceil(3.0 * len / tight));
  return std::min(n, spec.max_nodes);
}

namespace {

// Wightman integral with the first slot lowered and the second raised:
//   sum over z1, z2 of w1 w2 A(first(z1), second(z2)).
// fz1 and fz2 fold switching and phases into the weights.
template <class F1, class F2>
RungOutcome lowered_integral(const DetectorParams& first, const DetectorParams& second,
                             VacuumKind vac, const QuadratureSpec& spec, const Rung& r, F1 f1,
                             F2 f2) {
  const double eta1 = contour_depth(first, vac, spec);
  const double eta2 = contour_depth(second, vac, spec);
  const PathNodes path1 = bump_path(first.support(spec.support_radius), eta1, -1, r.nodes);
  const PathNodes path2 = bump_path(second.support(spec.support_radius), eta2, +1, r.nodes);
  const PairKernel kern = make_kernel(first, vac, r.epsilon);
  auto prep = [&](const DetectorParams& det, const PathNodes& path, auto f,
                  std::vector<KernelPoint>& pts, std::vector<cdouble>& wts) {
    pts.resize(path.z.size());
    wts.resize(path.z.size());
    for (std::size_t i = 0; i < path.z.size(); ++i) {
      pts[i] = kern.prepare(det.worldline.at(path.z[i]));
      wts[i] = path.w[i] * f(path.z[i]);
    }
  };
  std::vector<KernelPoint> p1, p2;
  std::vector<cdouble> g1, g2;
  prep(first, path1, f1, p1, g1);
  prep(second, path2, f2, p2, g2);
  const std::size_t m = p1.size();
  RungOutcome out;
  out.value = sum_rows(static_cast<int>(p2.size()), [&](int j) {
    const KernelPoint& q = p2[j];
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += g1[i] * kern(p1[i], q);
    if (!finite(acc)) throw NumericalError("non-finite integrand on the row tau' = " + where(path2.z[j].real()));
    return acc * g2[j];
  });
  out.depth = std::min(eta1, eta2);
  out.max_spacing = std::max(path1.max_spacing, path2.max_spacing);
  return out;
}

}  // namespace

RungEvaluator local_evaluator(const DetectorParams& detI, const DetectorParams& detJ,
                              VacuumKind vac, const QuadratureSpec& spec) {
  detI.validate(spec.support_radius);
  detJ.validate(spec.support_radius);
  return [=](const Rung& r) {
    return lowered_integral(
        detI, detJ, vac, spec, r,
        [&](cdouble z) { return detI.switching(z) * std::exp(-I * detI.gap * z); },
        [&](cdouble z) { return detJ.switching(z) * std::exp(I * detJ.gap * z); });
  };
}

RungEvaluator signalling_evaluator(const DetectorParams& detA, const DetectorParams& detB,
                                   VacuumKind vac, const QuadratureSpec& spec) {
  detA.validate(spec.support_radius);
  detB.validate(spec.support_radius);
  return [=](const Rung& r) {
    auto chiA = [&](cdouble z) { return detA.switching(z); };
    auto chiB = [&](cdouble z) { return detB.switching(z); };
    const RungOutcome ab = lowered_integral(detA, detB, vac, spec, r, chiA, chiB);
    const RungOutcome ba = lowered_integral(detB, detA, vac, spec, r, chiB, chiA);
    RungOutcome out;
    out.value = ab.value - ba.value;
    out.depth = std::min(ab.depth, ba.depth);
    out.max_spacing = std::max(ab.max_spacing, ba.max_spacing);
    return out;
  };
}

namespace {

// Logistic step evaluated once for both orderings; saturates without exp far from the switch.
void step_pair(double k, cdouble dt, cdouble& later, cdouble& earlier) {
  const cdouble x = k * dt;
  if (x.real() > 40.0) {
    later = 1.0;
    earlier = 0.0;
  } else if (x.real() < -40.0) {
    later = 0.0;
    earlier = 1.0;
  } else {
    later = smooth_step(k, dt);
    earlier = 1.0 - later;
  }
}

// Outer times at which the two worldlines pass through the same event (same PG
// time and position). The M integrand is singular there.
std::vector<double> crossing_times(const DetectorParams& in, const DetectorParams& out,
                                   double radius) {
  const Interval si = in.support(radius), so = out.support(radius);
  auto gap = [&](double tb) -> std::optional<double> {
    const auto pb = out.worldline.at(tb);
    const auto star = in.worldline.tau_at_pg_time(pb.t_pg);
    if (!star || !si.contains(*star)) return std::nullopt;
    return in.worldline.at(*star).r - pb.r;
  };
  std::vector<double> found;
  const int samples = 2000;
  double prev_t = so.lo;
  std::optional<double> prev = gap(so.lo);
  for (int i = 1; i <= samples; ++i) {
    const double t = so.lo + so.length() * i / samples;
    const std::optional<double> cur = gap(t);
    if (prev && cur && (*prev == 0.0 || (*prev < 0.0) != (*cur < 0.0))) {
      double a = prev_t, b = t, fa = *prev;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double c = 0.5 * (a + b);
        const std::optional<double> fc = gap(c);
        if (!fc) break;
        if ((*fc < 0.0) == (fa < 0.0)) {
          a = c;
          fa = *fc;
        } else {
          b = c;
        }
      }
      found.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev = cur;
  }
  return found;
}

// Real outer nodes on seg, split at the crossings and graded towards them.
Grid outer_grid(Interval seg, const std::vector<double>& cuts, int n, double h0) {
  Grid g;
  std::vector<double> edges{seg.lo};
  for (double c : cuts)
    if (seg.contains(c)) edges.push_back(c);
  edges.push_back(seg.hi);
  const std::size_t pieces = edges.size() - 1;
  if (pieces == 1) return real_grid(seg, n);
  for (std::size_t k = 0; k < pieces; ++k) {
    const Interval piece{edges[k], edges[k + 1]};
    const int m = 16 * std::max(2, static_cast<int>(std::ceil(n * piece.length() / seg.length() / 16.0)));
    auto add = [&](Interval sub, bool at_hi) {
      const PathNodes path = bump_path(sub, 0.0, 1, m, h0, at_hi);
      for (std::size_t i = 0; i < path.z.size(); ++i) {
        g.t.push_back(path.z[i].real());
        g.w.push_back(path.w[i].real());
      }
    };
    const bool left_cut = k > 0, right_cut = k + 1 < pieces;
    if (left_cut && right_cut) {
      add({piece.lo, piece.mid()}, false);
      add({piece.mid(), piece.hi}, true);
    } else {
      add(piece, right_cut);
    }
  }
  return g;
}

// M with the inner variable on `in` (split at equal PG time, deformed) and
// the outer on `out` (real axis). M is symmetric under swapping the detectors.
RungOutcome nonlocal_rung(const DetectorParams& in, const DetectorParams& out, VacuumKind vac,
                          const QuadratureSpec& spec, const Rung& r,
                          const std::vector<double>& crossings) {
  const double eta = contour_depth(in, vac, spec);
  const Interval si = in.support(spec.support_radius);
  const Interval so = out.support(spec.support_radius);
  const bool coincident = in.worldline.same_trajectory(out.worldline);
  // Away from crossings the contour keeps clear of the poles and eps hardly
  // matters. At a crossing it sets the size of the resolved ball, so measure
  // it in the local null coordinates there (the crossing nearest the peak).
  PairKernel kern = make_kernel(in, vac, r.epsilon);
  if (!crossings.empty()) {
    double c = crossings.front();
    for (double x : crossings)
      if (std::abs(x - out.peak) < std::abs(c - out.peak)) c = x;
    kern = PairKernel(vac, rs_of(out.worldline), r.epsilon, out.worldline.at(c));
  }
  // the eps scale around a crossing has to be resolved
  const Grid grid = outer_grid(so, crossings, r.nodes, 0.01 * r.epsilon);
  const int rows = static_cast<int>(grid.t.size());
  // A fast PG clock squeezes the light-cone crossings against the split; grade towards it.
  double rate = 0.0;
  for (int i = 0; i <= 8; ++i) {
    const double t = si.lo + si.length() * (0.05 + 0.1125 * i), h = 1e-4 * in.width;
    rate = std::max(rate, std::abs(in.worldline.pg_time(t + h) - in.worldline.pg_time(t - h)) / (2.0 * h));
  }
  const double h0_base = coincident ? 0.1 * r.epsilon : rate > 2.0 ? 0.01 * in.width / rate : 0.0;
  std::vector<double> row_spacing(rows, 0.0);

  auto panel = [&](Interval seg, int direction, double tb, const KernelPoint& q, bool grade_at_hi,
                   double h0, double& gap) {
    const double len = seg.length();
    if (!(len > 0.0)) return cdouble(0.0);
    const double depth = std::min(eta, 0.1 * len);
    // multiples of 16 keep the Gauss rule cache small
    const int n = 16 * std::max(2, static_cast<int>(std::ceil(r.nodes * len / si.length() / 16.0)));
    const PathNodes path = bump_path(seg, depth, direction, n, h0, grade_at_hi);
    gap = std::max(gap, path.max_spacing);
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < path.z.size(); ++i) {
      const cdouble z = path.z[i];
      const auto pt = in.worldline.at(z);
      const KernelPoint p = kern.prepare(pt);
      cdouble later, earlier;
      step_pair(r.k, pt.t_pg - tb, later, earlier);
      cdouble w = 0.0;
      if (later != 0.0) w += later * kern(p, q);
      if (earlier != 0.0) w += earlier * kern(q, p);
      acc += path.w[i] * in.switching(z) * std::exp(I * in.gap * z) * w;
    }
    return acc;
  };

  RungOutcome res;
  res.value = sum_rows(rows, [&](int j) {
    const double tb = grid.t[j];
    const auto pb = out.worldline.at(tb);
    const KernelPoint q = kern.prepare(complexify(pb));
    const std::optional<double> star = in.worldline.tau_at_pg_time(pb.t_pg);
    const double split = star ? std::clamp(*star, si.lo, si.hi) : si.hi;
    // Near a crossing the light-cone poles sit next to the split as well.
    double h0 = h0_base;
    for (double c : crossings) {
      const double near = 0.01 * std::max(std::abs(tb - c), r.epsilon);
      h0 = h0 > 0.0 ? std::min(h0, near) : near;
    }
    double gap = 0.0;
    // inner point later: A(x_in, x_out) has its poles above, lower the contour
    cdouble acc = panel({split, si.hi}, -1, pb.t_pg, q, false, h0, gap);
    // inner point earlier: A(x_out, x_in) has its poles below, raise it
    acc += panel({si.lo, split}, +1, pb.t_pg, q, true, h0, gap);
    row_spacing[j] = gap;
    if (!finite(acc)) throw NumericalError("non-finite M integrand on the row tau = " + where(tb));
    return -acc * (grid.w[j] * out.switching(tb) * std::exp(I * out.gap * tb));
  });
  res.depth = eta;
  for (double g : row_spacing) res.max_spacing = std::max(res.max_spacing, g);
  return res;
}

}  // namespace

RungEvaluator nonlocal_evaluator(const DetectorParams& detA, const DetectorParams& detB,
                                 VacuumKind vac, const QuadratureSpec& spec) {
  detA.validate(spec.support_radius);
  detB.validate(spec.support_radius);
  const bool b_inner = pair_geometry(detA, detB, vac, spec).b_inner;
  const DetectorParams& in = b_inner ? detB : detA;
  const DetectorParams& out = b_inner ? detA : detB;
  std::vector<double> cuts;
  if (!in.worldline.same_trajectory(out.worldline))
    cuts = crossing_times(in, out, spec.support_radius);
  return [=, in = in, out = out](const Rung& r) { return nonlocal_rung(in, out, vac, spec, r, cuts); };
}

CertifiedValue local_term(const DetectorParams& detI, const DetectorParams& detJ, VacuumKind vac,
                          const QuadratureSpec& spec) {
  return certify(local_evaluator(detI, detJ, vac, spec), spec, "L",
                 base_nodes(detI, detJ, vac, spec));
}

CertifiedValue nonlocal_term(const DetectorParams& detA, const DetectorParams& detB,
                             VacuumKind vac, const QuadratureSpec& spec) {
  return certify(nonlocal_evaluator(detA, detB, vac, spec), spec, "M",
                 base_nodes(detA, detB, vac, spec));
}

CertifiedValue signalling_integral(const DetectorParams& detA, const DetectorParams& detB,
                                   VacuumKind vac, const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  s.abs_tol = std::max(s.abs_tol, kSignallingFloor);
  return certify(signalling_evaluator(detA, detB, vac, s), s, "E", base_nodes(detA, detB, vac, s));
}

double signalling_estimator(const DetectorParams& detA, const DetectorParams& detB,
                            VacuumKind vac, const QuadratureSpec& spec) {
  return 0.5 * signalling_integral(detA, detB, vac, spec).value.imag();
}

Eigen::Matrix4cd assemble_density_matrix(const PairMatrix& pm, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("assemble_density_matrix: lambda must be positive");
  const double l2 = lambda * lambda;
  const double laa = l2 * pm.L_AA.real(), lbb = l2 * pm.L_BB.real();
  if (!(1.0 - laa - lbb > 0.0))
    throw DomainError("assemble_density_matrix: coupling too large for the perturbative state");
  const cdouble lab = l2 * pm.L_AB, m = l2 * pm.M;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = 1.0 - laa - lbb;
  rho(0, 3) = std::conj(m);
  rho(1, 1) = lbb;
  rho(1, 2) = std::conj(lab);
  rho(2, 1) = lab;
  rho(2, 2) = laa;
  rho(3, 0) = m;
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-12)
    throw NumericalError("assembled density matrix has trace " + where(tr));
  return rho;
}

double concurrence(const PairMatrix& pm) {
  const double laa = std::max(0.0, pm.L_AA.real());
  const double lbb = std::max(0.0, pm.L_BB.real());
  return 2.0 * std::max(0.0, std::abs(pm.M) - std::sqrt(laa * lbb));
}

namespace {
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

double mutual_information(const PairMatrix& pm, double lambda) {
  const double l2 = lambda * lambda;
  const double laa = l2 * std::max(0.0, pm.L_AA.real());
  const double lbb = l2 * std::max(0.0, pm.L_BB.real());
  const double lab = l2 * std::abs(pm.L_AB);
  const double root = std::sqrt((laa - lbb) * (laa - lbb) + 4.0 * lab * lab);
  const double lp = 0.5 * (laa + lbb + root);
  // L_+ L_- = L_AA L_BB - |L_AB|^2 avoids the cancellation in (sum - root)/2.
  const double lm = lp > 0.0 ? std::max(0.0, (laa * lbb - lab * lab) / lp) : 0.0;
  return (xlogx(lp) + xlogx(lm) - xlogx(laa) - xlogx(lbb)) / l2;
}

double mutual_information(const PairMatrix& pm) { return mutual_information(pm, 1.0); }

}  // namespace harvest

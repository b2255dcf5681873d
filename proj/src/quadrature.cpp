#include "harvest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

thread_local bool t_in_worker = false;

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("quadrature: epsilon must be positive");
  if (!(k_sharpness > 0.0)) throw ConfigError("quadrature: k_sharpness must be positive");
  if (nodes < 32) throw ConfigError("quadrature: need at least 32 nodes per axis");
  if (!(support_radius >= 3.0)) throw ConfigError("quadrature: support_radius must be >= 3");
  if (!(rel_tol > 0.0)) throw ConfigError("quadrature: rel_tol must be positive");
  if (abs_tol < 0.0) throw ConfigError("quadrature: abs_tol must be non-negative");
  if (max_refinements < 1) throw ConfigError("quadrature: max_refinements must be >= 1");
  if (contour_depth < 0.0) throw ConfigError("quadrature: contour_depth must be non-negative");
  if (max_nodes < nodes) throw ConfigError("quadrature: max_nodes below nodes");
}

double smooth_step(double k, double z) { return 0.5 + 0.5 * std::tanh(k * z); }

// Logistic form of (1 + tanh w)/2, stable for large |Re w|.
cdouble smooth_step(double k, cdouble z) {
  const cdouble w = k * z;
  if (w.real() >= 0.0) return 1.0 / (1.0 + std::exp(-2.0 * w));
  const cdouble e = std::exp(2.0 * w);
  return e / (1.0 + e);
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (slot) return *slot;
  auto rule = std::make_unique<GaussRule>();
  rule->x.resize(n);
  rule->w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->x[i] = -x;
    rule->x[n - 1 - i] = x;
    rule->w[i] = rule->w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->x[n / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

int worker_threads() {
  if (const char* env = std::getenv("HH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_worker_thread(bool on) { t_in_worker = on; }

cdouble sum_rows(int rows, const std::function<cdouble(int)>& row) {
  std::vector<cdouble> part(rows);
  const int threads = t_in_worker ? 1 : std::min(worker_threads(), rows);
  if (threads <= 1) {
    for (int j = 0; j < rows; ++j) part[j] = row(j);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        t_in_worker = true;
        try {
          for (int j = t; j < rows; j += threads) part[j] = row(j);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }
  cdouble total = 0.0;
  for (const auto& p : part) total += p;
  return total;
}

cdouble integrate_2d(const Integrand2D& f, Interval boxA, Interval boxB, int n) {
  const GaussRule& g = gauss_legendre(n);
  const double ha = 0.5 * boxA.length(), ma = boxA.mid();
  const double hb = 0.5 * boxB.length(), mb = boxB.mid();
  return sum_rows(n, [&](int j) {
    const double tb = mb + hb * g.x[j];
    cdouble acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ta = ma + ha * g.x[i];
      const cdouble val = f(ta, tb);
      if (!finite(val)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand at (tau, tau') = (" << ta << ", " << tb << ")";
        throw NumericalError(os.str());
      }
      acc += g.w[i] * val;
    }
    return acc * (g.w[j] * ha * hb);
  });
}

namespace {

// Depth profile d tanh(x/d) tanh((L-x)/d): leaves both ends at 45 degrees, so
// poles close to an endpoint keep a clearance comparable to their distance.
void append_panel(PathNodes& out, double lo, double hi, int n, const Interval& seg, double depth,
                  int direction) {
  const GaussRule& g = gauss_legendre(n);
  const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
  for (int i = 0; i < n; ++i) {
    const double s = m + h * g.x[i];
    double y = 0.0, dy = 0.0;
    if (depth > 0.0) {
      const double a = std::tanh((s - seg.lo) / depth), b = std::tanh((seg.hi - s) / depth);
      y = depth * a * b;
      dy = (1.0 - a * a) * b - a * (1.0 - b * b);
    }
    out.z.emplace_back(s, direction * y);
    out.w.push_back(g.w[i] * h * cdouble(1.0, direction * dy));
  }
}

}  // namespace

PathNodes bump_path(Interval seg, double depth, int direction, int n, double graded_h0,
                    bool grade_at_hi) {
  PathNodes out;
  const double L = seg.length();
  if (!(L > 0.0)) return out;
  struct Panel {
    double lo, hi;
    int n;
  };
  std::vector<Panel> fine;
  double lo = seg.lo, hi = seg.hi;
  if (graded_h0 > 0.0 && graded_h0 < 0.01 * L) {
    const int per = std::max(16, n / 50);
    double a = 0.0, h = graded_h0;
    while (a + h < 0.01 * L) {
      if (grade_at_hi)
        fine.push_back({seg.hi - a - h, seg.hi - a, per});
      else
        fine.push_back({seg.lo + a, seg.lo + a + h, per});
      a += h;
      h *= 4.0;
    }
    (grade_at_hi ? hi : lo) = grade_at_hi ? seg.hi - a : seg.lo + a;
  }
  if (grade_at_hi) {
    append_panel(out, lo, hi, n, seg, depth, direction);
    for (auto it = fine.rbegin(); it != fine.rend(); ++it)
      append_panel(out, it->lo, it->hi, it->n, seg, depth, direction);
  } else {
    for (const auto& p : fine) append_panel(out, p.lo, p.hi, p.n, seg, depth, direction);
    append_panel(out, lo, hi, n, seg, depth, direction);
  }
  double gap = std::abs(out.z.front() - cdouble(seg.lo, 0.0));
  for (std::size_t i = 1; i < out.z.size(); ++i) gap = std::max(gap, std::abs(out.z[i] - out.z[i - 1]));
  gap = std::max(gap, std::abs(cdouble(seg.hi, 0.0) - out.z.back()));
  out.max_spacing = gap;
  return out;
}

std::string LadderReport::to_text() const {
  std::ostringstream os;
  os.precision(6);
  os << "[" << label << "] " << (converged ? "converged" : "NOT converged");
  if (converged) os << ", achieved_tol=" << achieved_tol;
  os << "\n";
  os << "  rung      N          eps            k        Re(value)        Im(value)   rel_change"
        "    depth  spacing  resolved\n";
  for (std::size_t j = 0; j < rungs.size(); ++j) {
    const auto& r = rungs[j];
    char line[256];
    std::snprintf(line, sizeof line,
                  "  %4zu %6d %12.4e %12.4e %16.9e %16.9e %12s %8.3f %8.4f %s\n", j, r.rung.nodes,
                  r.rung.epsilon, r.rung.k, r.estimate.real(), r.estimate.imag(),
                  r.rel_change < 0.0 ? "-" : fmt("%.3e", r.rel_change).c_str(), r.outcome.depth,
                  r.outcome.max_spacing, r.resolved ? "yes" : "no");
    os << line;
  }
  if (!attribution.empty()) os << "  attribution: " << attribution << "\n";
  return os.str();
}

ConvergenceFailure::ConvergenceFailure(LadderReport report)
    : std::runtime_error("quadrature ladder did not converge for " + report.label + "\n" +
                         report.to_text()),
      report_(std::move(report)) {}

LadderReport run_ladder(const RungEvaluator& eval, const QuadratureSpec& spec,
                        const std::string& label, int base_nodes) {
  spec.validate();
  LadderReport rep;
  rep.label = label;
  std::vector<cdouble> raw;
  for (int j = 0; j <= spec.max_refinements; ++j) {
    const double scale = std::ldexp(1.0, j);
    Rung rung{static_cast<int>(std::min<long>(static_cast<long>(base_nodes) << j, spec.max_nodes)),
              spec.epsilon / scale, spec.k_sharpness * scale};
    RungRecord rec{rung, eval(rung), {}, -1.0, -1.0, true};
    if (!finite(rec.outcome.value))
      throw NumericalError(label + ": non-finite value at rung " + std::to_string(j));
    raw.push_back(rec.outcome.value);
    rec.estimate = (spec.extrapolate && j >= 1) ? 2.0 * raw[j] - raw[j - 1] : raw[j];
    rec.resolved = rec.outcome.depth > 0.0 ? rec.outcome.max_spacing < rec.outcome.depth
                                           : rec.outcome.max_spacing < 0.5 * rung.epsilon;
    if (j >= 1) {
      const bool first_extrap = spec.extrapolate && j == 1;
      rec.change = first_extrap ? std::abs(raw[1] - raw[0])
                                : std::abs(rec.estimate - rep.rungs.back().estimate);
      const double mag = std::abs(rec.estimate);
      rec.rel_change = mag > 0.0 ? rec.change / mag : (rec.change > 0.0 ? INFINITY : 0.0);
      // two rungs at the node cap agree trivially; that is not evidence
      const bool refined = rung.nodes > rep.rungs.back().rung.nodes;
      rep.rungs.push_back(rec);
      if (refined && rec.change <= std::max(spec.rel_tol * mag, spec.abs_tol)) {
        rep.converged = true;
        rep.achieved_tol = mag > 0.0 ? rec.change / mag : 0.0;
        return rep;
      }
    } else {
      rep.rungs.push_back(rec);
    }
  }
  // Probe the finest node count at the previous regulator to see which knob moved the value.
  const std::size_t n = rep.rungs.size();
  if (n >= 2) {
    const Rung& last = rep.rungs[n - 1].rung;
    const Rung& prev = rep.rungs[n - 2].rung;
    const cdouble probe = eval({last.nodes, prev.epsilon, prev.k}).value;
    const double node_effect = std::abs(probe - raw[n - 2]);
    const double reg_effect = std::abs(raw[n - 1] - probe);
    std::ostringstream os;
    os.precision(3);
    os << (node_effect > reg_effect ? "node count" : "regulator (eps, k)")
       << " dominates the last change: |dN| = " << node_effect << ", |d eps| = " << reg_effect;
    rep.attribution = os.str();
  }
  return rep;
}

CertifiedValue certify(const RungEvaluator& eval, const QuadratureSpec& spec,
                       const std::string& label, int base_nodes) {
  LadderReport rep = run_ladder(eval, spec, label, base_nodes);
  if (!rep.converged) throw ConvergenceFailure(std::move(rep));
  const cdouble v = rep.rungs.back().estimate;
  const double tol = rep.achieved_tol;
  return {v, tol, std::move(rep)};
}

CertifiedValue certified_integral(const RegulatedIntegrand& f, Interval boxA, Interval boxB,
                                  const QuadratureSpec& spec) {
  auto eval = [&](const Rung& r) {
    RungOutcome o;
    o.value = integrate_2d([&](double a, double b) { return f(a, b, r.epsilon, r.k); }, boxA, boxB,
                           r.nodes);
    const GaussRule& g = gauss_legendre(r.nodes);
    double gap = 0.0;
    for (int i = 1; i < r.nodes; ++i) gap = std::max(gap, g.x[i] - g.x[i - 1]);
    o.max_spacing = 0.5 * boxA.length() * gap;
    return o;
  };
  return certify(eval, spec, "integral", spec.nodes);
}

int oscillation_budget(const QuadratureSpec& spec, double gap, double width) {
  const double want = std::ceil(20.0 * std::abs(gap) * width * spec.support_radius);
  return static_cast<int>(std::min<double>(std::max<double>(spec.nodes, want), spec.max_nodes));
}

}  // namespace harvest

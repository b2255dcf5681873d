#pragma once

// One-dimensional reductions used as independent references in the tests.
// Composite Simpson on contours pushed off the real axis; no library quadrature.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "harvest/detector_pair.hpp"

namespace oracle {

using cd = std::complex<double>;
inline const cd I{0.0, 1.0};

// Simpson over x in [a, b] along z(x), dz/dx supplied.
inline cd simpson(const std::function<cd(cd)>& f, const std::function<cd(double)>& z,
                  const std::function<cd(double)>& dz, double a, double b, int n = 40000) {
  const double h = (b - a) / n;
  cd s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f(z(x)) * dz(x);
  }
  return s * h / 3.0;
}

// L for a stationary trajectory with switching exp(-tau^2) and W depending on
// s = tau - tau' only: sqrt(pi/2) * int ds exp(-s^2/2 - i Omega s) W(s). The
// line is lowered by c, below the pole of W at s = +i0.
inline cd stationary_L(const std::function<cd(cd)>& W, double gap, double c = 0.5) {
  auto f = [&](cd s) { return std::exp(-0.5 * s * s - I * gap * s) * W(s); };
  return std::sqrt(std::numbers::pi / 2.0) *
         simpson(f, [&](double x) { return cd(x, -c); }, [](double) { return cd(1.0); }, -14.0, 14.0);
}

// Minkowski static W(s), both sectors.
inline cd minkowski_W(cd s) { return -1.0 / (2.0 * std::numbers::pi * s * s); }

// Static detector at areal radius r0 in the Hartle-Hawking state.
inline std::function<cd(cd)> hartle_hawking_W(double mass, double r0) {
  const double f = 1.0 - 2.0 * mass / r0;
  const double b = 1.0 / (8.0 * mass * std::sqrt(f));
  return [b](cd s) {
    const cd sh = std::sinh(b * s);
    return -b * b / (2.0 * std::numbers::pi * sh * sh);
  };
}

// M for two static Minkowski detectors a distance L apart, peaks aligned:
// the time-ordered kernel is even in s, which folds M onto s > 0.
inline cd minkowski_static_M(double L, double gap) {
  auto G = [&](cd s) {
    return -1.0 / (4.0 * std::numbers::pi) * (1.0 / ((s - L) * (s - L)) + 1.0 / ((s + L) * (s + L)));
  };
  auto f = [&](cd s) { return std::exp(-0.5 * s * s) * G(s); };
  const double c = 0.5;
  const cd half = simpson(f, [&](double x) { return cd(x, -c * std::tanh(x)); },
                          [&](double x) { const double t = std::tanh(x); return cd(1.0, -c * (1.0 - t * t)); },
                          0.0, 14.0);
  return -2.0 * std::sqrt(std::numbers::pi / 2.0) * std::exp(-0.5 * gap * gap) * half;
}

// Signalling estimator from the commutator of the derivative field, which is
// supported on the light cone: each null sector gives (1/4) int chi_A(tau_A(x)) chi_B'(tau_B(x)) dx.
// coord(k, point) picks the null coordinate of sector k, increasing along both worldlines.
inline double signalling(const harvest::DetectorParams& A, const harvest::DetectorParams& B,
                         const std::function<double(int, const harvest::WorldlinePoint<double>&)>& coord,
                         double radius = 8.0, int n = 100000) {
  const auto dom = A.worldline.domain();
  const double alo = std::max(A.peak - radius, dom.lo + 1e-12);
  const double ahi = std::min(A.peak + radius, dom.hi - 1e-12);
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    auto cA = [&](double t) { return coord(k, A.worldline.at(t)); };
    const double flo = cA(alo), fhi = cA(ahi);
    const double lo = B.peak - radius, hi = B.peak + radius, h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double tb = lo + i * h;
      const double x = coord(k, B.worldline.at(tb));
      double fa = 0.0;
      if (x > flo && x < fhi) {
        double a = alo, b = ahi;
        for (int it = 0; it < 100; ++it) {
          const double m = 0.5 * (a + b);
          (cA(m) < x ? a : b) = m;
        }
        fa = A.switching(0.5 * (a + b));
      }
      const double y = (tb - B.peak) / B.width;
      const double dchi = -2.0 * y / B.width * std::exp(-y * y);
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * fa * dchi;
    }
    total += 0.25 * s * h / 3.0;
  }
  return total;
}

}  // namespace oracle

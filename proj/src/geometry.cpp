#include "harvest/geometry.hpp"

#include <cmath>
#include <string>

#include "harvest/errors.hpp"

namespace harvest {

BlackHole::BlackHole(double m) : mass(m) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("black hole mass must be positive, got " + std::to_string(m));
}

double metric_function(const BlackHole& bh, double r) {
  if (!(r > 0.0)) throw DomainError("metric_function: r <= 0 is the curvature singularity");
  if (r == bh.rs()) return 0.0;
  return 1.0 - bh.rs() / r;
}

double tortoise(const BlackHole& bh, double r) {
  if (!(r > 0.0)) throw DomainError("tortoise: r must be positive");
  if (r == bh.rs()) throw PoleError("tortoise: r = r_s is a pole");
  return r + bh.rs() * std::log(std::abs(r / bh.rs() - 1.0));
}

double pg_time_offset(const BlackHole& bh, double r) {
  if (!(r > 0.0)) throw DomainError("pg_time_offset: r must be positive");
  if (r == bh.rs()) throw PoleError("pg_time_offset: r = r_s is a pole");
  const double q = std::sqrt(r / bh.rs());
  return bh.rs() * (2.0 * q + std::log(std::abs((q - 1.0) / (q + 1.0))));
}

double proper_distance(double r1, double r2) {
  if (r1 < 0.0 || r2 < 0.0) throw DomainError("proper_distance: radii must be non-negative");
  return std::abs(r2 - r1);
}

KruskalPair kruskal_from_null(const BlackHole& bh, double u, double v) {
  const double rs = bh.rs();
  KruskalPair k{-2.0 * rs * std::exp(-u / (2.0 * rs)), 2.0 * rs * std::exp(v / (2.0 * rs))};
  if (!std::isfinite(k.U) || !std::isfinite(k.V))
    throw RangeError("kruskal_from_null: overflow for u = " + std::to_string(u) +
                     ", v = " + std::to_string(v));
  return k;
}

}  // namespace harvest

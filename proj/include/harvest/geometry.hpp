#pragma once

// Schwarzschild exterior/interior bookkeeping in (1+1) dimensions.
// Every length and time is measured in units of the switching width sigma.

#include <utility>

namespace harvest {

struct BlackHole {
  double mass;

  explicit BlackHole(double m);
  double rs() const { return 2.0 * mass; }
};

// f(r) = 1 - r_s/r
double metric_function(const BlackHole& bh, double r);

// r_* = r + r_s ln|r/r_s - 1|
double tortoise(const BlackHole& bh, double r);

// t_PG - t_S at radius r (rain-frame synchronisation)
double pg_time_offset(const BlackHole& bh, double r);

// PG slices are flat, so radial proper distance is just |r2 - r1|.
double proper_distance(double r1, double r2);

struct KruskalPair {
  double U;
  double V;
};

KruskalPair kruskal_from_null(const BlackHole& bh, double u, double v);

}  // namespace harvest

#pragma once

// Detector trajectories parametrised by proper time. Evaluation is templated on
// the scalar so that the quadrature engine can push tau off the real axis.

#include <complex>
#include <limits>
#include <optional>

#include "harvest/geometry.hpp"

namespace harvest {

using cdouble = std::complex<double>;

struct Interval {
  double lo;
  double hi;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x > lo && x < hi; }
};

template <class T>
struct WorldlinePoint {
  T u{}, v{};      // null coordinates
  T U{}, V{};      // Kruskal coordinates
  T du{}, dv{};    // d/dtau
  T dU{}, dV{};
  T t_pg{};        // PG time (flat time for Minkowski trajectories)
  T r{};
  bool has_u = false;
  bool has_v = false;
  bool has_kruskal = false;
};

class Worldline {
 public:
  enum class Kind { Static, Infall, MinkowskiStatic, MinkowskiBoosted };

  Kind kind() const { return kind_; }
  bool flat() const { return kind_ == Kind::MinkowskiStatic || kind_ == Kind::MinkowskiBoosted; }
  // Null for Minkowski trajectories.
  const BlackHole* black_hole() const { return bh_ ? &*bh_ : nullptr; }
  Interval domain() const;
  double radius() const { return r0_; }        // static only
  double position() const { return x0_; }      // Minkowski only
  double speed() const { return speed_; }      // boosted only

  template <class T>
  WorldlinePoint<T> at(T tau) const;

  // Checked single-field accessors.
  double null_u(double tau) const;
  double pg_time(double tau) const;
  // Inverse of pg_time; nullopt when the PG time is never reached inside the domain.
  std::optional<double> tau_at_pg_time(double t) const;

  bool same_trajectory(const Worldline& o) const;

  friend Worldline static_worldline(const BlackHole& bh, double r0);
  friend Worldline infall_worldline(const BlackHole& bh);
  friend Worldline minkowski_static_worldline(double x0);
  friend Worldline minkowski_boosted_worldline(double x0, double speed);

 private:
  Worldline() = default;

  Kind kind_ = Kind::MinkowskiStatic;
  std::optional<BlackHole> bh_;
  double r0_ = 0.0;
  double x0_ = 0.0;
  double speed_ = 0.0;
  // cached static quantities
  double redshift_ = 1.0;   // sqrt(f(r0)) or 1/gamma
  double rstar_ = 0.0;
  double pg_offset_ = 0.0;
};

Worldline static_worldline(const BlackHole& bh, double r0);
Worldline infall_worldline(const BlackHole& bh);
Worldline minkowski_static_worldline(double x0);
// Recedes towards -x: x(tau) = x0 - speed * gamma * tau.
Worldline minkowski_boosted_worldline(double x0, double speed);

// Horizon crossing time of the rain geodesic, -4M/3.
double infall_horizon_time(const BlackHole& bh);
double infall_radius(const BlackHole& bh, double tau);

double kinematic_relative_velocity(const BlackHole& bh, double rA, double rB);
double infall_proper_acceleration(const BlackHole& bh, double tau);
// Proper time at which the infaller sits at radius d.
double ff_peak_time(const BlackHole& bh, double d);
double delta_parameter(const BlackHole& bh, double tauA0, double rB, double tauB0);

}  // namespace harvest

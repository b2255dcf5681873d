#include "harvest/worldline.hpp"

#include <cmath>
#include <string>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double re(double x) { return x; }
double re(const cdouble& z) { return z.real(); }

double cube_root(double x) { return std::cbrt(x); }
cdouble cube_root(const cdouble& z) { return std::pow(z, 1.0 / 3.0); }

bool finite(double x) { return std::isfinite(x); }
bool finite(const cdouble& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Worldline static_worldline(const BlackHole& bh, double r0) {
  if (!(r0 > bh.rs()))
    throw DomainError("static_worldline: no static observer at/inside horizon (r0 = " +
                      std::to_string(r0) + ")");
  Worldline w;
  w.kind_ = Worldline::Kind::Static;
  w.bh_ = bh;
  w.r0_ = r0;
  w.redshift_ = std::sqrt(metric_function(bh, r0));
  w.rstar_ = tortoise(bh, r0);
  w.pg_offset_ = pg_time_offset(bh, r0);
  return w;
}

Worldline infall_worldline(const BlackHole& bh) {
  Worldline w;
  w.kind_ = Worldline::Kind::Infall;
  w.bh_ = bh;
  return w;
}

Worldline minkowski_static_worldline(double x0) {
  Worldline w;
  w.kind_ = Worldline::Kind::MinkowskiStatic;
  w.x0_ = x0;
  return w;
}

Worldline minkowski_boosted_worldline(double x0, double speed) {
  if (!(std::abs(speed) < 1.0))
    throw DomainError("minkowski_boosted_worldline: |speed| must be < 1, got " +
                      std::to_string(speed));
  Worldline w;
  w.kind_ = Worldline::Kind::MinkowskiBoosted;
  w.x0_ = x0;
  w.speed_ = speed;
  w.redshift_ = std::sqrt(1.0 - speed * speed);
  return w;
}

Interval Worldline::domain() const {
  if (kind_ == Kind::Infall) return {-kInf, 0.0};
  return {-kInf, kInf};
}

template <class T>
WorldlinePoint<T> Worldline::at(T tau) const {
  WorldlinePoint<T> p;
  switch (kind_) {
    case Kind::Static: {
      const double rs = bh_->rs();
      const T t = tau / redshift_;
      p.u = t - rstar_;
      p.v = t + rstar_;
      p.du = p.dv = T(1.0 / redshift_);
      p.U = -2.0 * rs * std::exp(-p.u / (2.0 * rs));
      p.V = 2.0 * rs * std::exp(p.v / (2.0 * rs));
      p.dU = -p.U / (2.0 * rs) * p.du;
      p.dV = p.V / (2.0 * rs) * p.dv;
      p.t_pg = t + pg_offset_;
      p.r = T(r0_);
      p.has_u = p.has_v = true;
      p.has_kruskal = finite(p.U) && finite(p.V) && finite(p.dU) && finite(p.dV);
      break;
    }
    case Kind::Infall: {
      if (!(re(tau) < 0.0))
        throw DomainError("infall worldline: tau must be negative (singularity at tau = 0)");
      const double rs = bh_->rs();
      const double taus = infall_horizon_time(*bh_);
      const T y = cube_root(tau / taus);
      const T half = tau / (2.0 * rs);
      p.r = rs * y * y;
      p.v = tau - 2.0 * rs * y + rs * y * y + 2.0 * rs * std::log(1.0 + y);
      p.dv = y / (1.0 + y);
      const T ev = std::exp(half - y + 0.5 * y * y);
      const T eu = std::exp(-half + y + 0.5 * y * y);
      p.V = 2.0 * rs * ev * (1.0 + y);
      p.dV = y * ev;
      p.U = 2.0 * rs * eu * (1.0 - y);
      p.dU = y * eu;
      p.t_pg = tau;
      p.has_v = true;
      p.has_kruskal = finite(p.U) && finite(p.V) && finite(p.dU) && finite(p.dV);
      if (re(tau) < taus) {
        p.u = tau - 2.0 * rs * y - rs * y * y - 2.0 * rs * std::log(y - 1.0);
        p.du = y / (y - 1.0);
        p.has_u = true;
      } else {
        p.u = p.du = T(std::numeric_limits<double>::quiet_NaN());
      }
      break;
    }
    case Kind::MinkowskiStatic:
      p.u = tau - x0_;
      p.v = tau + x0_;
      p.du = p.dv = T(1.0);
      p.t_pg = tau;
      p.r = T(x0_);
      p.has_u = p.has_v = true;
      break;
    case Kind::MinkowskiBoosted: {
      const double gamma = 1.0 / redshift_;
      const T t = gamma * tau;
      const T x = x0_ - speed_ * t;
      p.u = t - x;
      p.v = t + x;
      p.du = T(gamma * (1.0 + speed_));
      p.dv = T(gamma * (1.0 - speed_));
      p.t_pg = t;
      p.r = x;
      p.has_u = p.has_v = true;
      break;
    }
  }
  if (!p.has_kruskal) p.U = p.V = p.dU = p.dV = T(std::numeric_limits<double>::quiet_NaN());
  return p;
}

template WorldlinePoint<double> Worldline::at<double>(double) const;
template WorldlinePoint<cdouble> Worldline::at<cdouble>(cdouble) const;

double Worldline::null_u(double tau) const {
  auto p = at(tau);
  if (!p.has_u)
    throw PatchError("u is not defined at tau = " + std::to_string(tau) +
                     " (worldline inside the horizon)");
  return p.u;
}

double Worldline::pg_time(double tau) const {
  switch (kind_) {
    case Kind::Static:
      return tau / redshift_ + pg_offset_;
    case Kind::Infall:
      if (!(tau < 0.0)) throw DomainError("infall worldline: tau must be negative");
      return tau;
    case Kind::MinkowskiStatic:
      return tau;
    case Kind::MinkowskiBoosted:
      return tau / redshift_;
  }
  return tau;
}

std::optional<double> Worldline::tau_at_pg_time(double t) const {
  switch (kind_) {
    case Kind::Static:
      return redshift_ * (t - pg_offset_);
    case Kind::Infall:
      if (t < 0.0) return t;
      return std::nullopt;
    case Kind::MinkowskiStatic:
      return t;
    case Kind::MinkowskiBoosted:
      return redshift_ * t;
  }
  return std::nullopt;
}

bool Worldline::same_trajectory(const Worldline& o) const {
  if (kind_ != o.kind_) return false;
  if (bh_.has_value() != o.bh_.has_value()) return false;
  if (bh_ && bh_->mass != o.bh_->mass) return false;
  return r0_ == o.r0_ && x0_ == o.x0_ && speed_ == o.speed_;
}

double infall_horizon_time(const BlackHole& bh) { return -4.0 * bh.mass / 3.0; }

double infall_radius(const BlackHole& bh, double tau) {
  if (!(tau < 0.0)) throw DomainError("infall_radius: tau must be negative");
  return bh.rs() * std::pow(tau / infall_horizon_time(bh), 2.0 / 3.0);
}

double kinematic_relative_velocity(const BlackHole& bh, double rA, double rB) {
  if (!(rA > 0.0)) throw DomainError("kinematic_relative_velocity: rA must be positive");
  if (!(rB > bh.rs())) throw DomainError("kinematic_relative_velocity: rB must lie outside r_s");
  const double fA = metric_function(bh, rA);
  const double s = 1.0 - fA * fA;
  if (s < 0.0) throw DomainError("kinematic_relative_velocity: f(rA)^2 > 1 (rA < r_s/2)");
  return metric_function(bh, rB) * std::sqrt(s);
}

double infall_proper_acceleration(const BlackHole& bh, double tau) {
  const double r = infall_radius(bh, tau);
  return -bh.mass / (r * r);
}

double ff_peak_time(const BlackHole& bh, double d) {
  if (!(d > 0.0)) throw DomainError("ff_peak_time: d must be positive");
  return -(d / 3.0) * std::sqrt(2.0 * d / bh.mass);
}

double delta_parameter(const BlackHole& bh, double tauA0, double rB, double tauB0) {
  if (!(rB > bh.rs())) throw DomainError("delta_parameter: rB must lie outside r_s");
  return tauB0 - std::sqrt(metric_function(bh, rB)) * (tauA0 - pg_time_offset(bh, rB));
}

}  // namespace harvest

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "harvest/detector_pair.hpp"
#include "harvest/errors.hpp"
#include "harvest/geometry.hpp"
#include "oracles.hpp"

using namespace harvest;

namespace {

DetectorParams det(Worldline w, double gap, double peak = 0.0) {
  DetectorParams d{gap, 1.0, peak, std::move(w)};
  return d;
}

bool rel_close(cdouble a, cdouble b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

double mink_L(double gap) {
  return 0.5 * std::exp(-0.5 * gap * gap) -
         0.5 * std::sqrt(std::numbers::pi / 2.0) * gap * std::erfc(gap / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("stationary L against the 1D reduction") {
  QuadratureSpec s;
  for (double gap : {1.0, 2.0, 3.0}) {
    const auto ref = oracle::stationary_L(oracle::minkowski_W, gap);
    CHECK(std::abs(ref.real() - mink_L(gap)) < 1e-10);
    const auto d = det(minkowski_static_worldline(0.0), gap);
    const cdouble L = local_term(d, d, VacuumKind::Minkowski, s).value;
    CHECK(rel_close(L, ref, 1e-4));
    CHECK(std::abs(L.imag()) < 1e-6 * std::abs(L));
    // Boulware static: same distribution as eps -> 0
    const auto b = det(static_worldline(BlackHole(1.0), 20.0), gap);
    CHECK(rel_close(local_term(b, b, VacuumKind::Boulware, s).value, ref, 1e-4));
  }
  // Hartle-Hawking static detector: thermal kernel in proper time
  for (double gap : {1.0, -1.0, 2.0}) {
    const auto W = oracle::hartle_hawking_W(1.0, 20.0);
    const cdouble ref = oracle::stationary_L(W, gap, 0.5);
    const auto h = det(static_worldline(BlackHole(1.0), 20.0), gap);
    CHECK(rel_close(local_term(h, h, VacuumKind::HartleHawking, s).value, ref, 1e-4));
  }
  // excitation dies off with the gap
  double prev = 1.0;
  for (double gap : {4.0, 6.0, 8.0}) {
    const double L = oracle::stationary_L(oracle::minkowski_W, gap).real();
    CHECK(L < prev);
    CHECK(L > 0.0);
    prev = L;
  }
}

TEST_CASE("small-mass Hartle-Hawking detector keeps the finite-width ratio") {
  // the engine ratio L(W)/L(-W) equals the 1D thermal-kernel ratio; both sit
  // above the Boltzmann factor because the switching is only one sigma wide
  QuadratureSpec s;
  const double m = 0.05, r0 = 100.0;
  const auto W = oracle::hartle_hawking_W(m, r0);
  const double ratio_ref =
      oracle::stationary_L(W, 1.0, 0.6).real() / oracle::stationary_L(W, -1.0, 0.6).real();
  const auto up = det(static_worldline(BlackHole(m), r0), 1.0);
  const auto dn = det(static_worldline(BlackHole(m), r0), -1.0);
  const double ratio = local_term(up, up, VacuumKind::HartleHawking, s).value.real() /
                       local_term(dn, dn, VacuumKind::HartleHawking, s).value.real();
  CHECK(ratio == doctest::Approx(ratio_ref).epsilon(1e-4));
  const double boltzmann = std::exp(-8.0 * std::numbers::pi * m * std::sqrt(1.0 - 2.0 * m / r0));
  CHECK(ratio > boltzmann);
}

TEST_CASE("local terms: structure") {
  QuadratureSpec s;
  const BlackHole bh(5.0);
  const auto a = det(static_worldline(bh, 12.0), 2.0, 0.0);
  const auto b = det(static_worldline(bh, 14.0), 2.0, 1.5);
  const cdouble ab = local_term(a, b, VacuumKind::Unruh, s).value;
  const cdouble ba = local_term(b, a, VacuumKind::Unruh, s).value;
  CHECK(rel_close(ba, std::conj(ab), 1e-6));
  const cdouble aa = local_term(a, a, VacuumKind::Unruh, s).value;
  CHECK(aa.real() > 0.0);
  CHECK(std::abs(aa.imag()) < 1e-6 * aa.real());
  // contour depth is a free parameter
  QuadratureSpec shallow = s;
  shallow.contour_depth = 0.25;
  CHECK(rel_close(local_term(a, b, VacuumKind::Unruh, shallow).value, ab, 1e-6));
}

TEST_CASE("nonlocal term") {
  QuadratureSpec s;
  SUBCASE("Minkowski static pair against the folded 1D reduction") {
    for (double L : {2.0, 5.0}) {
      const auto a = det(minkowski_static_worldline(0.0), 2.0);
      const auto b = det(minkowski_static_worldline(L), 2.0);
      const cdouble M = nonlocal_term(a, b, VacuumKind::Minkowski, s).value;
      CHECK(rel_close(M, oracle::minkowski_static_M(L, 2.0), 1e-4));
    }
  }
  SUBCASE("swap symmetry") {
    const BlackHole bh(5.0);
    const auto a = det(infall_worldline(bh), 2.0, ff_peak_time(bh, 40.0));
    const auto b = det(static_worldline(bh, 42.0), 2.0, 3.0);
    const cdouble ab = nonlocal_term(a, b, VacuumKind::Unruh, s).value;
    const cdouble ba = nonlocal_term(b, a, VacuumKind::Unruh, s).value;
    CHECK(rel_close(ab, ba, 1e-6));
  }
  SUBCASE("coincident worldlines: M grows like 1/eps") {
    // time ordering on one worldline leaves int ds/(|s| - i eps)^2 = 2i/eps per sector
    const double gap = 1.0, sep = 2.0;
    const auto a = det(minkowski_static_worldline(0.0), gap, 0.0);
    const auto b = det(minkowski_static_worldline(0.0), gap, sep);
    const auto eval = nonlocal_evaluator(a, b, VacuumKind::Minkowski, s);
    const cdouble lead = oracle::I / std::numbers::pi * std::sqrt(std::numbers::pi / 2.0) *
                         std::exp(-0.5 * sep * sep - 0.5 * gap * gap) *
                         std::exp(oracle::I * gap * sep);
    for (double eps : {1e-4, 1e-5}) {
      const cdouble M = eval({800, eps, 10.0 / eps}).value;
      CHECK(std::abs(M * eps - lead) < 1e-2 * std::abs(lead));
    }
  }
}

TEST_CASE("signalling estimator") {
  QuadratureSpec s;
  auto mink = [](int k, const WorldlinePoint<double>& p) { return k == 0 ? p.u : p.v; };
  SUBCASE("Minkowski static pairs") {
    const auto a = det(minkowski_static_worldline(0.0), 2.0, 0.0);
    const auto far = det(minkowski_static_worldline(40.0), 2.0, 0.0);
    CHECK(std::abs(signalling_estimator(a, far, VacuumKind::Minkowski, s)) < 1e-15);
    // exactly on the light cone the derivative coupling cancels; straddling it does not
    const auto on = det(minkowski_static_worldline(2.0), 2.0, 2.0);
    const auto off = det(minkowski_static_worldline(2.0), 2.0, 3.0);
    const double E_on = signalling_estimator(a, on, VacuumKind::Minkowski, s);
    const double E_off = signalling_estimator(a, off, VacuumKind::Minkowski, s);
    CHECK(E_on == doctest::Approx(oracle::signalling(a, on, mink)).epsilon(1e-6));
    CHECK(E_off == doctest::Approx(oracle::signalling(a, off, mink)).epsilon(1e-6));
    CHECK(std::abs(E_off) > 1e-3);
    CHECK(std::abs(signalling_estimator(a, a, VacuumKind::Minkowski, s)) < 1e-12);
  }
  SUBCASE("infaller near the horizon and a static partner") {
    // state independent; the outgoing sector uses U so the horizon crossing is regular
    const BlackHole bh(5.0);
    auto kr = [](int k, const WorldlinePoint<double>& p) { return k == 0 ? p.U : p.v; };
    const double tauA = ff_peak_time(bh, 11.0), rB = 16.0;
    const double tauB0 = std::sqrt(metric_function(bh, rB)) * (tauA - pg_time_offset(bh, rB));
    const auto a = det(infall_worldline(bh), 2.0, tauA);
    for (double delta : {-2.0, 0.0, 18.0}) {
      const auto b = det(static_worldline(bh, rB), 2.0, tauB0 + delta);
      const double ref = oracle::signalling(a, b, kr);
      CHECK(signalling_estimator(a, b, VacuumKind::Unruh, s) == doctest::Approx(ref).epsilon(1e-6));
      CHECK(signalling_estimator(a, b, VacuumKind::HartleHawking, s) == doctest::Approx(ref).epsilon(1e-6));
    }
  }
}

TEST_CASE("ladder diagnostics") {
  const auto d = det(minkowski_static_worldline(0.0), 2.0);
  SUBCASE("converged point has shrinking changes") {
    QuadratureSpec s;
    s.rel_tol = 1e-9;
    s.max_refinements = 3;
    const auto rep = run_ladder(local_evaluator(d, d, VacuumKind::Minkowski, s), s, "L", 128);
    REQUIRE(rep.rungs.size() >= 3);
    for (std::size_t i = 2; i < rep.rungs.size(); ++i)
      CHECK(rep.rungs[i].rel_change < rep.rungs[i - 1].rel_change);
  }
  SUBCASE("pole kernel with a large regulator settles within three rungs") {
    QuadratureSpec s;
    s.epsilon = 1e-2;
    s.k_sharpness = 1e3;
    s.nodes = 128;
    s.rel_tol = 1e-4;
    s.extrapolate = true;
    const auto rep = run_ladder(local_evaluator(d, d, VacuumKind::Minkowski, s), s, "L", 128);
    CHECK(rep.converged);
    CHECK(rep.rungs.size() <= 3);
  }
  SUBCASE("oversized regulator is blamed") {
    QuadratureSpec s;
    s.epsilon = 1e-1;
    const auto rep = run_ladder(local_evaluator(d, d, VacuumKind::Minkowski, s), s, "L", 400);
    CHECK_FALSE(rep.converged);
    CHECK(rep.attribution.find("regulator") != std::string::npos);
  }
  SUBCASE("under-resolved oscillation fails") {
    QuadratureSpec s;
    s.nodes = 64;
    s.max_nodes = 64;
    const auto fast = det(minkowski_static_worldline(0.0), 20.0);
    const auto rep = run_ladder(local_evaluator(fast, fast, VacuumKind::Minkowski, s), s, "L", 64);
    CHECK_FALSE(rep.converged);
  }
}

TEST_CASE("density matrix, concurrence, mutual information") {
  PairMatrix zero{};
  const Eigen::Matrix4cd r0 = assemble_density_matrix(zero, 0.01);
  CHECK((r0 - Eigen::Matrix4cd(Eigen::Vector4cd(1, 0, 0, 0).asDiagonal())).norm() == 0.0);
  CHECK(concurrence(zero) == 0.0);
  CHECK(mutual_information(zero) == 0.0);

  PairMatrix pm{};
  pm.L_AA = pm.L_BB = 0.25;
  pm.M = 0.5;
  CHECK(concurrence(pm) == doctest::Approx(0.5));
  pm.M = 0.2;
  CHECK(concurrence(pm) == 0.0);

  PairMatrix mi{};
  mi.L_AA = mi.L_BB = 0.3;
  CHECK(mutual_information(mi) == doctest::Approx(0.0).epsilon(1e-15));
  mi.L_AB = 0.3;
  CHECK(mutual_information(mi) == doctest::Approx(2 * 0.3 * std::log(2.0)).epsilon(1e-12));
  // per-lambda^2 value does not depend on the reporting coupling
  mi.L_AA = 0.011;
  mi.L_BB = 0.0105;
  mi.L_AB = cdouble(0.002, 0.001);
  CHECK(mutual_information(mi, 0.01) == doctest::Approx(mutual_information(mi, 0.3)).epsilon(1e-10));
  // and grows with |L_AB|
  PairMatrix more = mi;
  more.L_AB *= 1.1;
  CHECK(mutual_information(more) > mutual_information(mi));
  CHECK(mutual_information(mi) > 0.0);

  // a converged static pair gives a positive state
  QuadratureSpec s;
  const BlackHole bh(5.0);
  const auto a = det(static_worldline(bh, 20.0), 2.0, 0.0);
  const auto b = det(static_worldline(bh, 22.0), 2.0, 0.3);
  PairMatrix p;
  p.L_AA = local_term(a, a, VacuumKind::Unruh, s).value;
  p.L_BB = local_term(b, b, VacuumKind::Unruh, s).value;
  p.L_AB = local_term(a, b, VacuumKind::Unruh, s).value;
  p.M = nonlocal_term(a, b, VacuumKind::Unruh, s).value;
  const Eigen::Matrix4cd rho = assemble_density_matrix(p, 0.01);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK((rho - rho.adjoint()).norm() < 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  CHECK(es.eigenvalues().minCoeff() >= -1e-6);
  CHECK_THROWS_AS(assemble_density_matrix(p, 0.0), DomainError);
  CHECK_THROWS_AS(assemble_density_matrix(p, 10.0), DomainError);
}

TEST_CASE("support must stay on the worldline") {
  const BlackHole bh(1.0);
  const auto a = det(infall_worldline(bh), 2.0, -2.0);
  const auto b = det(static_worldline(bh, 4.0), 2.0);
  CHECK_THROWS_AS(local_term(a, a, VacuumKind::Unruh, QuadratureSpec{}), DomainError);
  CHECK_THROWS_AS(nonlocal_term(a, b, VacuumKind::Unruh, QuadratureSpec{}), DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elastica/critical.hpp"
#include "elastica/frames.hpp"
#include "elastica/shooting.hpp"

using namespace elastica;
using std::numbers::pi;

namespace {

double max_abs_diff(const std::vector<double>& values, double target) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - target));
  return worst;
}

SolveOptions tight(double tol, std::size_t samples = 4096) {
  SolveOptions o;
  o.tol = tol;
  o.samples = samples;
  return o;
}

}  // namespace

TEST_CASE("planar constant equilibrium: c1 = kappa0^2 keeps kappa flat") {
  const auto sol = solve_planar_elastica({1.0, 0.0, 1.0, 0.0, 2.0 * pi}, tight(1e-12));
  REQUIRE(sol.completed());
  CHECK(max_abs_diff(sol.kappa, 1.0) <= 1e-10);
  CHECK(max_abs_diff(sol.kappa_p, 0.0) <= 1e-10);
}

TEST_CASE("planar: preconditions and input checks") {
  CHECK_THROWS_AS(solve_planar_elastica({1.0, 0.5, 1.0, 0.0, 2.0 * pi}), std::invalid_argument);
  CHECK_THROWS_AS(solve_planar_elastica({1.0, 0.0, 1.0, 0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("closed-planar reference row reconstructs a nearly closed loop") {
  const auto& row = reference_table(1)[0];  // circumference constants
  const auto sol =
      solve_planar_elastica({row.params[0], 0.0, row.params[1], row.params[2], row.length},
                            tight(1e-12));
  REQUIRE(sol.completed());
  // near-constant curvature, and the reconstructed loop closes to the printed
  // precision of the constants
  CHECK(max_abs_diff(sol.kappa, sol.kappa.front()) <= 0.05);
  const auto curve = integrate_frame(sol.profile(), Frame::identity(), Vec3::Zero());
  const auto closure = closure_defect(curve, ClosureMode::Planar);
  CHECK(closure.defect <= 1e-2);
}

TEST_CASE("lemniscate row: closure integrals are small, curvature crosses zero") {
  const auto& row = reference_table(1)[1];
  const auto sol =
      solve_planar_elastica({row.params[0], 0.0, row.params[1], row.params[2], row.length},
                            tight(1e-12));
  REQUIRE(sol.completed());
  CHECK(sol.min_abs_kappa() < 1e-3);  // the normalized form is regular through kappa = 0
  const auto [c, s] = planar_closure_integrals(sol.profile());
  CHECK(std::abs(c) + std::abs(s) <= 1e-1);
}

TEST_CASE("free-elastica rows all integrate to completion") {
  for (const auto& row : reference_table(2)) {
    const auto sol = solve_planar_elastica(
        {row.params[0], 0.0, row.params[1], row.params[2], row.length}, tight(1e-10, 1024));
    CHECK(sol.completed());
  }
}

TEST_CASE("space elastica with c2 = 0 reduces to the planar model") {
  const auto sol = solve_space_elastica({1.0, 0.0, 1.0, 0.0, 2.0 * pi}, tight(1e-12));
  REQUIRE(sol.completed());
  CHECK(max_abs_diff(sol.kappa, 1.0) <= 1e-10);
  CHECK(max_abs_diff(sol.tau, 0.0) == 0.0);
}

TEST_CASE("space elastica constant helix: c1 = kappa0^2 - 2 c2^2 / kappa0^4") {
  // Substituting kappa == kappa0 into 2k'' - 2c2^2/k^3 + k^3 - c1 k = 0 gives
  // c1 = kappa0^2 - 2 c2^2 / kappa0^4; with kappa0 = 1, c2 = 1 that is -1.
  const double kappa0 = 1.0, c2 = 1.0;
  const double c1 = kappa0 * kappa0 - 2.0 * c2 * c2 / std::pow(kappa0, 4);
  CHECK(c1 == doctest::Approx(-1.0));
  const auto sol = solve_space_elastica({c1, c2, kappa0, 0.0, 4.0 * pi}, tight(1e-12));
  REQUIRE(sol.completed());
  CHECK(max_abs_diff(sol.kappa, kappa0) <= 1e-10);
  CHECK(max_abs_diff(sol.tau, c2 / (kappa0 * kappa0)) <= 1e-10);
}

TEST_CASE("kappa^2 tau = c2 holds exactly by construction") {
  const auto& row = reference_table(3)[0];
  const auto sol = solve_space_elastica(
      {row.params[0], row.params[1], row.params[2], row.params[3], row.length}, tight(1e-10));
  REQUIRE(sol.completed());
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.kappa.size(); ++i)
    worst = std::max(worst,
                     std::abs(sol.kappa[i] * sol.kappa[i] * sol.tau[i] - row.params[1]));
  CHECK(worst <= 1e-12 * std::abs(row.params[1]));
}

TEST_CASE("closed-space reference rows complete without curvature events") {
  for (const auto& row : reference_table(3)) {
    const auto sol = solve_space_elastica(
        {row.params[0], row.params[1], row.params[2], row.params[3], row.length},
        tight(1e-10, 1024));
    CHECK(sol.completed());
    CHECK(sol.min_abs_kappa() > 0.0);
  }
}

TEST_CASE("quadratic model helix equilibrium") {
  // kappa == 2, tau == 1 solves the system when c = (kappa^2 + tau^2)/2 = 2.5.
  const auto sol = solve_quadratic_model({2.5, 2.0, 0.0, 1.0, 0.0, 0.0, 4.0 * pi}, tight(1e-12));
  REQUIRE(sol.completed());
  CHECK(max_abs_diff(sol.kappa, 2.0) <= 1e-10);
  CHECK(max_abs_diff(sol.tau, 1.0) <= 1e-10);
}

TEST_CASE("quadratic model rejects kappa0 = 0") {
  CHECK_THROWS_AS(solve_quadratic_model({0.5, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("quadratic reference rows complete with curvature bounded away from zero") {
  for (const auto& row : reference_table(4)) {
    SolveOptions options = tight(1e-10);
    options.max_step = row.length / double(options.samples);
    const auto sol = solve_quadratic_model({row.params[0], row.params[1], row.params[2],
                                            row.params[3], row.params[4], row.params[5],
                                            row.length},
                                           options);
    CHECK(sol.completed());
    CHECK(sol.min_abs_kappa() > 0.0);
    CHECK(quadratic_conservation_monitor(sol) <= 1e-6);
  }
}

TEST_CASE("a quadratic run that reaches kappa = 0 stops with the event location") {
  // strong curvature slope drives kappa through zero well before s = 10
  const auto sol = solve_quadratic_model({0.01, 1.0, -2.0, 1.0, 0.0, 0.0, 10.0}, tight(1e-10));
  CHECK(sol.termination == Termination::CurvatureVanished);
  CHECK(sol.stop_s > 0.0);
  CHECK(sol.stop_s < 10.0);
  CHECK(std::abs(sol.kappa.back()) <= 2e-8);
}

TEST_CASE("step-budget exhaustion reports a diverged run") {
  SolveOptions options = tight(1e-12);
  options.max_steps = 10;
  const auto sol = solve_planar_elastica({1.0, 0.0, 1.0, 0.5, 8.0 * pi}, options);
  CHECK(sol.termination == Termination::Diverged);
  CHECK(!sol.diagnostic.empty());
}

TEST_CASE("first integral: constant circle gives I = c1 exactly") {
  const auto sol = solve_planar_elastica({1.0, 0.0, 1.0, 0.0, 2.0 * pi}, tight(1e-12));
  const auto report = elastica_first_integral(sol);
  CHECK(report.reference == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.max_deviation <= 1e-12);
  CHECK(report.quadrature_drift <= 1e-12);
}

TEST_CASE("first integral equals c1 on reference rows") {
  SUBCASE("free row with c1 = 0.08") {
    const auto& row = reference_table(2)[0];
    const auto sol = solve_planar_elastica(
        {row.params[0], 0.0, row.params[1], row.params[2], row.length}, tight(1e-12));
    const auto report = elastica_first_integral(sol);
    CHECK(std::abs(report.reference - 0.08) <= 1e-8);
    CHECK(max_abs_diff(report.values, 0.08) <= 1e-8);
    CHECK(report.quadrature_drift <= 1e-8);
  }
  SUBCASE("closed space row at tol 1e-12") {
    const auto& row = reference_table(3)[0];
    const auto sol = solve_space_elastica(
        {row.params[0], row.params[1], row.params[2], row.params[3], row.length}, tight(1e-12));
    const auto report = elastica_first_integral(sol);
    CHECK(std::abs(report.reference - row.params[0]) <= 1e-8);
    CHECK(report.quadrature_drift <= 1e-8);
  }
}

TEST_CASE("quadrature drift shrinks with the tolerance") {
  auto drift_at = [](double tol) {
    const auto& row = reference_table(3)[0];
    SolveOptions options = tight(tol, 512);
    options.max_step = -1.0;  // error-limited mesh: drift tracks the tolerance
    const auto sol = solve_space_elastica(
        {row.params[0], row.params[1], row.params[2], row.params[3], row.length}, options);
    return elastica_first_integral(sol).quadrature_drift;
  };
  const double d8 = drift_at(1e-8);
  const double d10 = drift_at(1e-10);
  const double d12 = drift_at(1e-12);
  CHECK(d8 >= 10.0 * d10);
  CHECK(d10 >= 10.0 * d12);
}

TEST_CASE("first integral rejects the quadratic model") {
  const auto quad = solve_quadratic_model({2.5, 2.0, 0.0, 1.0, 0.0, 0.0, 1.0}, tight(1e-10));
  CHECK_THROWS_AS(elastica_first_integral(quad), std::invalid_argument);
}

TEST_CASE("multiplier witness vanishes on constant solutions") {
  SUBCASE("quadratic density on the constant helix") {
    const auto sol = solve_quadratic_model({2.5, 2.0, 0.0, 1.0, 0.0, 0.0, 4.0 * pi}, tight(1e-12));
    const auto curve = integrate_frame(sol.profile(), Frame::identity(), Vec3::Zero());
    const auto witness = multiplier_witness(EnergyDensity::quadratic(), sol, curve);
    CHECK(max_abs_diff(witness.mu, 0.0) <= 1e-10);
    CHECK(witness.constancy_defect <= 1e-10);
  }
  SUBCASE("euler density on the unit circle") {
    const auto sol = solve_planar_elastica({1.0, 0.0, 1.0, 0.0, 2.0 * pi}, tight(1e-12));
    const auto curve = integrate_frame(sol.profile(), Frame::identity(), Vec3::Zero());
    const auto witness = multiplier_witness(EnergyDensity::euler(), sol, curve);
    CHECK(max_abs_diff(witness.mu, 0.0) <= 1e-10);
    CHECK(witness.constancy_defect <= 1e-10);
    CHECK(witness.mu_residual <= 1e-10);
  }
}

TEST_CASE("multiplier witness flags a perturbed non-solution") {
  const std::size_t steps = 2000;
  std::vector<double> s(steps + 1), kappa(steps + 1), tau(steps + 1, 0.0);
  CurvatureTorsionProfile profile;
  profile.length = 2.0 * pi;
  for (std::size_t i = 0; i <= steps; ++i) {
    s[i] = profile.length * double(i) / double(steps);
    kappa[i] = 1.0 + 0.1 * std::sin(s[i]);
  }
  profile.kappa = kappa;
  profile.tau = tau;
  const auto curve = integrate_frame(profile, Frame::identity(), Vec3::Zero());
  const auto path = path_from_samples(s, kappa, tau);
  const auto witness = multiplier_witness(EnergyDensity::euler(), path, curve.frames);
  CHECK(witness.constancy_defect >= 1e-3);
}

TEST_CASE("multiplier witness rejects paths through kappa = 0") {
  const auto& row = reference_table(1)[1];  // lemniscate crosses zero curvature
  const auto sol = solve_planar_elastica(
      {row.params[0], 0.0, row.params[1], row.params[2], row.length}, tight(1e-10, 512));
  const auto curve = integrate_frame(sol.profile(), Frame::identity(), Vec3::Zero());
  CHECK_THROWS_AS(multiplier_witness(EnergyDensity::euler(), sol, curve), std::invalid_argument);
}

TEST_CASE("first-order residuals") {
  SUBCASE("quadratic density on the constant helix") {
    const auto sol = solve_quadratic_model({2.5, 2.0, 0.0, 1.0, 0.0, 0.0, 4.0 * pi}, tight(1e-12));
    const auto report = reg1_residual(EnergyDensity::quadratic(), sol);
    CHECK(report.sup1 <= 1e-10);
    CHECK(report.sup2 <= 1e-10);
  }
  SUBCASE("quadratic density on a quadratic reference row at n = 8192") {
    const auto& row = reference_table(4)[0];
    SolveOptions options = tight(1e-12, 8192);
    options.max_step = row.length / 8192.0;
    const auto sol = solve_quadratic_model({row.params[0], row.params[1], row.params[2],
                                            row.params[3], row.params[4], row.params[5],
                                            row.length},
                                           options);
    REQUIRE(sol.completed());
    const auto report = reg1_residual(EnergyDensity::quadratic(), sol);
    CHECK(report.sup1 <= 1e-5);
    CHECK(report.sup2 <= 1e-5);
  }
  SUBCASE("euler density on a space solution: first residual collapses") {
    const auto& row = reference_table(3)[0];
    SolveOptions options = tight(1e-12, 4096);
    options.max_step = row.length / 4096.0;
    const auto sol = solve_space_elastica(
        {row.params[0], row.params[1], row.params[2], row.params[3], row.length}, options);
    const auto report = reg1_residual(EnergyDensity::euler(), sol);
    CHECK(report.sup1 <= 1e-8);
    CHECK(std::isfinite(report.sup2));
  }
}

TEST_CASE("time reversal returns to the initial data") {
  const double length = 8.0 * pi;
  const auto forward = solve_planar_elastica({1.0, 0.0, 1.0, -1.0, length}, tight(1e-12));
  REQUIRE(forward.completed());
  const double k_end = forward.steps.back().kappa;
  const double kp_end = forward.steps.back().kappa_p;
  const auto back = solve_planar_elastica({1.0, 0.0, k_end, -kp_end, length}, tight(1e-12));
  REQUIRE(back.completed());
  CHECK(std::abs(back.steps.back().kappa - 1.0) <= 1e-9);
  CHECK(std::abs(back.steps.back().kappa_p - 1.0) <= 1e-9);
}

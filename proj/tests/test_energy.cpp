#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elastica/energy.hpp"
#include "elastica/random.hpp"

using namespace elastica;
using std::numbers::pi;

TEST_CASE("catalog density values and partials") {
  SUBCASE("euler") {
    const auto v = evaluate_density(EnergyDensity::euler(), 0.0, 3.0, 7.0);
    CHECK(v.f == 9.0);
    CHECK(v.fa == 6.0);
    CHECK(v.fb == 0.0);
  }
  SUBCASE("sadowsky seam point (1,1) gives 4 from both branches") {
    const auto v = evaluate_density(EnergyDensity::sadowsky(), 0.0, 1.0, 1.0);
    CHECK(v.f == doctest::Approx(4.0).epsilon(1e-15));
    const double first_branch = std::pow(1.0 + 1.0, 2) / 1.0;  // (a^2+b^2)^2/a^2
    const double second_branch = 4.0;
    CHECK(first_branch == doctest::Approx(second_branch));
  }
  SUBCASE("sadowsky interior of the steep branch") {
    const auto v = evaluate_density(EnergyDensity::sadowsky(), 0.0, 2.0, 1.0);
    CHECK(v.f == doctest::Approx(6.25).epsilon(1e-15));  // (4+1)^2/4
  }
  SUBCASE("sadowsky origin is the defined zero") {
    const auto v = evaluate_density(EnergyDensity::sadowsky(), 0.0, 0.0, 0.0);
    CHECK(v.f == 0.0);
    CHECK(v.fa == 0.0);
    CHECK(v.fb == 0.0);
  }
  SUBCASE("non-finite input rejected") {
    CHECK_THROWS_AS(evaluate_density(EnergyDensity::euler(), 0.0, std::nan(""), 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("sadowsky branch gradients agree on the seam") {
  const auto density = EnergyDensity::sadowsky();
  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    double b = rng.next_in(-10.0, 10.0);
    if (b == 0.0) b = 0.5;
    const double a = std::abs(b);
    // first branch formulas evaluated analytically at |a| = |b|
    const double fa1 = 2.0 * a - 2.0 * std::pow(b, 4) / (a * a * a);
    const double fb1 = 4.0 * b + 4.0 * b * b * b / (a * a);
    const auto v2 = evaluate_density(density, 0.0, a, b);  // second branch applies at a = |b|
    CHECK(std::abs(fa1 - v2.fa) <= 1e-10 * std::max(1.0, std::abs(v2.fa)));
    CHECK(std::abs(fb1 - v2.fb) <= 1e-10 * std::max(1.0, std::abs(v2.fb)));
  }
}

TEST_CASE("sadowsky seam continuity gap shrinks at first order") {
  const auto density = EnergyDensity::sadowsky();
  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    double b = rng.next_in(-10.0, 10.0);
    if (std::abs(b) < 0.1) b = 0.7;
    double previous = 1e300;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      const double gap = std::abs(density.evaluate(0.0, std::abs(b) + eps, b).f -
                                  density.evaluate(0.0, std::abs(b) - eps, b).f);
      CHECK(gap <= 10.0 * eps * std::max(1.0, b * b));
      CHECK(gap <= previous + 1e-12);
      previous = gap;
    }
  }
}

TEST_CASE("energy quadrature") {
  SUBCASE("euler on the unit circle") {
    const double e = evaluate_energy(EnergyDensity::euler(),
                                     CurvatureTorsionProfile::constant(1.0, 0.0, 2.0 * pi, 4096));
    CHECK(std::abs(e - 2.0 * pi) <= 1e-12);
  }
  SUBCASE("quadratic with unit curvature and torsion") {
    const double e = evaluate_energy(EnergyDensity::quadratic(),
                                     CurvatureTorsionProfile::constant(1.0, 1.0, 1.0, 100));
    CHECK(std::abs(e - 1.0) <= 1e-12);
  }
  SUBCASE("euler on the trial circle kappa = 2 pi / L") {
    for (double length : {1.0, 2.0 * pi, 10.0}) {
      const double kappa = 2.0 * pi / length;
      const double e = evaluate_energy(
          EnergyDensity::euler(), CurvatureTorsionProfile::constant(kappa, 0.0, length, 512));
      CHECK(e == doctest::Approx(4.0 * pi * pi / length).epsilon(1e-13));
    }
  }
  SUBCASE("odd interval count still exact for constants") {
    const double e = evaluate_energy(EnergyDensity::quadratic(),
                                     CurvatureTorsionProfile::constant(1.0, 1.0, 1.0, 101));
    CHECK(std::abs(e - 1.0) <= 1e-12);
  }
}

TEST_CASE("simpson is exact for integrands polynomial in s up to degree 3") {
  // langer_singer with kappa linear and tau cubic in s gives
  // f = l1 + l2 s^3 + l3 (alpha + beta s)^2 / 2.
  const double l1 = 0.7, l2 = 1.3, l3 = 2.1, alpha = 0.4, beta = -0.6, length = 3.0;
  const std::size_t steps = 64;
  CurvatureTorsionProfile p;
  p.length = length;
  p.kappa.resize(steps + 1);
  p.tau.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double s = p.node_s(i);
    p.kappa[i] = alpha + beta * s;
    p.tau[i] = s * s * s;
  }
  const double computed = evaluate_energy(EnergyDensity::langer_singer(l1, l2, l3), p);
  const double exact = l1 * length + l2 * std::pow(length, 4) / 4.0 +
                       l3 / 2.0 *
                           (alpha * alpha * length + alpha * beta * length * length +
                            beta * beta * std::pow(length, 3) / 3.0);
  CHECK(computed == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("density probes") {
  SUBCASE("sadowsky coercivity f >= a^2 + 2 b^2 has no violations") {
    const auto report = probe_density(EnergyDensity::sadowsky(), ProbeOptions{});
    CHECK(report.coercivity_declared);
    CHECK(report.coercivity.count == 0);
  }
  SUBCASE("euler fails coercivity in the torsion direction") {
    const auto report = probe_density(EnergyDensity::euler(), ProbeOptions{});
    CHECK(report.coercivity.count > 0);
    // the violation amount is b^2, so the worst sample has |b| at the box edge
    CHECK(std::abs(report.coercivity.b) == doctest::Approx(5.0));
    CHECK(report.coercivity.worst == doctest::Approx(25.0));
  }
  SUBCASE("upper growth and partial growth hold for the catalog") {
    for (const auto& density : {EnergyDensity::euler(), EnergyDensity::quadratic(),
                                EnergyDensity::sadowsky(), EnergyDensity::langer_singer(1, 1, 1)}) {
      const auto report = probe_density(density, ProbeOptions{});
      CHECK(report.upper_growth.count == 0);
      CHECK(report.partial_growth.count == 0);
    }
  }
  SUBCASE("quadratic partials match finite differences at 1e-6 with fd_step 1e-6") {
    ProbeOptions options;
    options.fd_step = 1e-6;
    const auto report = probe_density(EnergyDensity::quadratic(), options);
    CHECK(report.max_partial_deviation <= 1e-6);
  }
  SUBCASE("all catalog partials match finite differences") {
    for (const auto& density : {EnergyDensity::euler(), EnergyDensity::quadratic(),
                                EnergyDensity::sadowsky(), EnergyDensity::langer_singer(1, 1, 1)}) {
      const auto report = probe_density(density, ProbeOptions{});
      CHECK(report.max_partial_deviation <= 1e-6);
    }
  }
  SUBCASE("sadowsky midpoint convexity on random pairs in [-10,10]^2") {
    ProbeOptions options;
    options.box = {-10.0, 10.0, -10.0, 10.0};
    options.grid_a = 3;  // convexity is the point here
    options.grid_b = 3;
    options.convexity_pairs = 100000;
    const auto report = probe_density(EnergyDensity::sadowsky(), options);
    CHECK(report.midpoint_convexity.count == 0);
  }
  SUBCASE("grid below 3 per axis rejected") {
    ProbeOptions options;
    options.grid_a = 2;
    CHECK_THROWS_AS(probe_density(EnergyDensity::euler(), options), std::invalid_argument);
  }
}

TEST_CASE("langer_singer declares no coercivity") {
  const auto density = EnergyDensity::langer_singer(1.0, -2.0, 0.5);
  const auto report = probe_density(density, ProbeOptions{});
  CHECK(!report.coercivity_declared);
  CHECK(report.coercivity.count == 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elastica/frames.hpp"

using namespace elastica;
using std::numbers::pi;

namespace {

// Exact curve of a constant-(kappa, tau) profile started from the canonical
// frame at the origin: decomposition of e1 along and around the rotation axis
// (tau, 0, kappa)/w, w^2 = kappa^2 + tau^2.
Vec3 helix_position(double kappa, double tau, double s) {
  const double w2 = kappa * kappa + tau * tau;
  const double w = std::sqrt(w2);
  const double ws = w * s;
  return Vec3(s * tau * tau / w2 + std::sin(ws) * kappa * kappa / (w2 * w),
              (1.0 - std::cos(ws)) * kappa / w2,
              s * tau * kappa / w2 - std::sin(ws) * tau * kappa / (w2 * w));
}

CurvatureTorsionProfile wavy_profile(std::size_t steps) {
  CurvatureTorsionProfile p;
  p.length = 2.0 * pi;
  p.kappa.resize(steps + 1);
  p.tau.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double s = p.length * double(i) / double(steps);
    p.kappa[i] = 1.0 + 0.3 * std::sin(s);
    p.tau[i] = 0.2 * std::cos(s);
  }
  return p;
}

}  // namespace

TEST_CASE("unit circle closes to machine precision") {
  const auto profile = CurvatureTorsionProfile::constant(1.0, 0.0, 2.0 * pi, 4096);
  const FramedCurve curve = integrate_frame(profile, Frame::identity(), Vec3::Zero());
  CHECK((curve.positions.back() - curve.positions.front()).norm() <= 1e-12);
  CHECK((curve.frames.back().t - curve.frames.front().t).norm() <= 1e-12);
  CHECK(curve.positions.front() == Vec3::Zero());
}

TEST_CASE("constant-curvature helix matches the closed form") {
  const double kappa = 1.0, tau = 0.5;
  const auto profile = CurvatureTorsionProfile::constant(kappa, tau, 4.0 * pi, 2048);
  const FramedCurve curve = integrate_frame(profile, Frame::identity(), Vec3::Zero());

  // radius kappa/(kappa^2+tau^2) = 0.8, pitch parameter tau/(kappa^2+tau^2) = 0.4
  CHECK(kappa / (kappa * kappa + tau * tau) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(tau / (kappa * kappa + tau * tau) == doctest::Approx(0.4).epsilon(1e-14));

  double worst = 0.0;
  for (std::size_t i = 0; i < curve.node_count(); ++i) {
    const double s = profile.node_s(i);
    worst = std::max(worst, (curve.positions[i] - helix_position(kappa, tau, s)).norm());
  }
  CHECK(worst <= 1e-8);  // constant profiles integrate exactly; only rounding remains
}

TEST_CASE("round trip recovers constants") {
  SUBCASE("circle") {
    const auto profile = CurvatureTorsionProfile::constant(1.0, 0.0, 2.0 * pi, 1000);
    const auto back = extract_curvature_torsion(integrate_frame(profile, Frame::identity(), Vec3::Zero()));
    for (std::size_t i = 0; i < back.node_count(); ++i) {
      CHECK(std::abs(back.kappa[i] - 1.0) <= 1e-5);
      CHECK(std::abs(back.tau[i]) <= 1e-5);
    }
  }
  SUBCASE("helix") {
    const auto profile = CurvatureTorsionProfile::constant(1.0, 0.5, 2.0 * pi, 1000);
    const auto back = extract_curvature_torsion(integrate_frame(profile, Frame::identity(), Vec3::Zero()));
    for (std::size_t i = 0; i < back.node_count(); ++i) {
      CHECK(std::abs(back.kappa[i] - 1.0) <= 1e-5);
      CHECK(std::abs(back.tau[i] - 0.5) <= 1e-5);
    }
  }
}

TEST_CASE("round trip on a varying profile is second order at interior nodes") {
  const auto profile = wavy_profile(2000);
  const auto back = extract_curvature_torsion(integrate_frame(profile, Frame::identity(), Vec3::Zero()));
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < back.node_count(); ++i) {
    worst = std::max(worst, std::abs(back.kappa[i] - profile.kappa[i]));
    worst = std::max(worst, std::abs(back.tau[i] - profile.tau[i]));
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("degenerate three-node curve extracts without failure") {
  const auto profile = CurvatureTorsionProfile::constant(1.0, 0.25, 1.0, 2);
  const auto back = extract_curvature_torsion(integrate_frame(profile, Frame::identity(), Vec3::Zero()));
  for (std::size_t i = 0; i < back.node_count(); ++i) {
    CHECK(std::isfinite(back.kappa[i]));
    CHECK(std::isfinite(back.tau[i]));
  }
}

TEST_CASE("closure defect") {
  SUBCASE("closed circle") {
    const auto curve = integrate_frame(CurvatureTorsionProfile::constant(1.0, 0.0, 2.0 * pi, 4096),
                                       Frame::identity(), Vec3::Zero());
    const auto report = closure_defect(curve, ClosureMode::Planar);
    CHECK(report.defect <= 1e-12);
    CHECK(report.defect == report.position_gap + report.tangent_gap);
  }
  SUBCASE("half circle: gap 2 + gap 2") {
    const auto curve = integrate_frame(CurvatureTorsionProfile::constant(1.0, 0.0, pi, 4096),
                                       Frame::identity(), Vec3::Zero());
    const auto report = closure_defect(curve, ClosureMode::Planar);
    CHECK(report.defect == doctest::Approx(4.0).epsilon(1e-10));
  }
  SUBCASE("planar mode rejects torsion") {
    const auto curve = integrate_frame(CurvatureTorsionProfile::constant(1.0, 0.5, pi, 64),
                                       Frame::identity(), Vec3::Zero());
    CHECK_THROWS_AS(closure_defect(curve, ClosureMode::Planar), std::invalid_argument);
    CHECK_NOTHROW(closure_defect(curve, ClosureMode::Spatial));
  }
}

TEST_CASE("planar closure integrals") {
  SUBCASE("full circle vanishes") {
    const auto [c, s] =
        planar_closure_integrals(CurvatureTorsionProfile::constant(1.0, 0.0, 2.0 * pi, 4096));
    CHECK(std::abs(c) <= 1e-10);
    CHECK(std::abs(s) <= 1e-10);
  }
  SUBCASE("straight segment") {
    const auto [c, s] =
        planar_closure_integrals(CurvatureTorsionProfile::constant(0.0, 0.0, 1.0, 16));
    CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s == 0.0);
  }
  SUBCASE("rejects torsion") {
    CHECK_THROWS_AS(planar_closure_integrals(CurvatureTorsionProfile::constant(1.0, 0.1, 1.0, 16)),
                    std::invalid_argument);
  }
}

TEST_CASE("orthonormality holds to machine precision on every node") {
  for (std::size_t steps : {100UL, 1000UL, 4096UL}) {
    const auto curve = integrate_frame(wavy_profile(steps), Frame::identity(), Vec3::Zero());
    double worst = 0.0;
    for (const Frame& f : curve.frames) worst = std::max(worst, f.orthonormality_defect());
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("defect error decays at second order under refinement") {
  // kappa(s) = cos s on [0, 2pi]: theta = sin s, the tangent returns exactly
  // and |r(L)| = 2 pi J0(1).
  const double exact = 2.0 * pi * std::cyl_bessel_j(0.0, 1.0);
  auto defect_at = [&](std::size_t steps) {
    CurvatureTorsionProfile p;
    p.length = 2.0 * pi;
    p.kappa.resize(steps + 1);
    p.tau.assign(steps + 1, 0.0);
    for (std::size_t i = 0; i <= steps; ++i) p.kappa[i] = std::cos(p.node_s(i));
    const auto curve = integrate_frame(p, Frame::identity(), Vec3::Zero());
    return closure_defect(curve, ClosureMode::Planar).defect;
  };
  const double e1 = std::abs(defect_at(250) - exact);
  const double e2 = std::abs(defect_at(500) - exact);
  const double e3 = std::abs(defect_at(1000) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("discrete frame equations hold at second order") {
  const auto profile = wavy_profile(2000);
  const auto curve = integrate_frame(profile, Frame::identity(), Vec3::Zero());
  const double h = profile.node_spacing();
  double worst_t = 0.0, worst_n = 0.0, worst_b = 0.0, worst_tb = 0.0;
  for (std::size_t i = 1; i + 1 < curve.node_count(); ++i) {
    const Vec3 dt = (curve.frames[i + 1].t - curve.frames[i - 1].t) / (2.0 * h);
    const Vec3 dn = (curve.frames[i + 1].n - curve.frames[i - 1].n) / (2.0 * h);
    const Vec3 db = (curve.frames[i + 1].b - curve.frames[i - 1].b) / (2.0 * h);
    const double k = profile.kappa[i], t = profile.tau[i];
    worst_t = std::max(worst_t, (dt - k * curve.frames[i].n).norm());
    worst_n = std::max(worst_n, (dn + k * curve.frames[i].t - t * curve.frames[i].b).norm());
    worst_b = std::max(worst_b, (db + t * curve.frames[i].n).norm());
    worst_tb = std::max(worst_tb, std::abs(dt.dot(curve.frames[i].b)));
  }
  CHECK(worst_t <= 1e-4);
  CHECK(worst_n <= 1e-4);
  CHECK(worst_b <= 1e-4);
  CHECK(worst_tb <= 1e-4);  // t'.b = 0 is structural in this parameterization
}

TEST_CASE("invalid profiles are rejected") {
  CurvatureTorsionProfile bad = CurvatureTorsionProfile::constant(1.0, 0.0, 2.0 * pi, 16);
  bad.kappa[3] = std::nan("");
  CHECK_THROWS_AS(integrate_frame(bad, Frame::identity(), Vec3::Zero()), std::invalid_argument);

  CurvatureTorsionProfile tiny = CurvatureTorsionProfile::constant(1.0, 0.0, 1.0, 1);
  CHECK_THROWS_AS(integrate_frame(tiny, Frame::identity(), Vec3::Zero()), std::invalid_argument);

  Frame bent;
  bent.t = Vec3(1.0, 0.4, 0.0);
  CHECK_THROWS_AS(integrate_frame(CurvatureTorsionProfile::constant(1.0, 0.0, 1.0, 16), bent,
                                  Vec3::Zero()),
                  std::invalid_argument);
}

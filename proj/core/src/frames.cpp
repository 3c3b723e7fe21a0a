#include "elastica/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace elastica {

FramedCurve integrate_frame(const CurvatureTorsionProfile& profile, const Frame& init,
                            const Vec3& base_point) {
  profile.validate();
  if (init.orthonormality_defect() > 1e-10)
    throw std::invalid_argument("integrate_frame: initial frame is not orthonormal");

  const std::size_t steps = profile.step_count();
  const double h = profile.node_spacing();

  FramedCurve curve;
  curve.base_point = base_point;
  curve.profile = profile;
  curve.positions.resize(steps + 1);
  curve.frames.resize(steps + 1);

  Mat3 rot = init.matrix();
  Vec3 pos = base_point;
  curve.positions[0] = pos;
  curve.frames[0] = init;

  for (std::size_t i = 0; i < steps; ++i) {
    // Body angular velocity of the frame: w_body = (tau, 0, kappa).
    const Vec3 w_body(profile.tau_mid(i), 0.0, profile.kappa_mid(i));
    pos += rot * (rotation_exp_integral(w_body, h) * Vec3::UnitX());
    rot = rot * rotation_exp(w_body, h);
    curve.positions[i + 1] = pos;
    curve.frames[i + 1] = Frame::from_matrix(rot);
  }
  return curve;
}

CurvatureTorsionProfile extract_curvature_torsion(const FramedCurve& curve) {
  const std::size_t n = curve.node_count();
  if (n < 3) throw std::invalid_argument("extract_curvature_torsion: needs at least 3 nodes");
  const double h = curve.profile.node_spacing();

  CurvatureTorsionProfile out;
  out.length = curve.profile.length;
  out.interpolation = curve.profile.interpolation;
  out.kappa.resize(n);
  out.tau.resize(n);

  // Centered differences inside, third-order one-sided stencils at the ends
  // (second-order ends would miss the round-trip tolerance at N = 1000).
  auto derivative = [&](auto&& member, std::size_t i) -> Vec3 {
    auto at = [&](std::size_t j) -> const Vec3& { return curve.frames[j].*member; };
    if (n >= 4) {
      if (i == 0)
        return (-11.0 * at(0) + 18.0 * at(1) - 9.0 * at(2) + 2.0 * at(3)) / (6.0 * h);
      if (i == n - 1)
        return (11.0 * at(n - 1) - 18.0 * at(n - 2) + 9.0 * at(n - 3) - 2.0 * at(n - 4)) / (6.0 * h);
    } else {
      if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
      if (i == n - 1) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
    }
    return (at(i + 1) - at(i - 1)) / (2.0 * h);
  };
  auto dt = [&](std::size_t i) { return derivative(&Frame::t, i); };
  auto dn = [&](std::size_t i) { return derivative(&Frame::n, i); };

  for (std::size_t i = 0; i < n; ++i) {
    out.kappa[i] = dt(i).dot(curve.frames[i].n);  // kappa = t'.n
    out.tau[i] = dn(i).dot(curve.frames[i].b);    // tau = n'.b
  }
  return out;
}

ClosureReport closure_defect(const FramedCurve& curve, ClosureMode mode) {
  if (curve.node_count() < 2) throw std::invalid_argument("closure_defect: empty curve");
  if (mode == ClosureMode::Planar && !curve.profile.is_planar())
    throw std::invalid_argument("closure_defect: planar mode requires tau == 0");

  ClosureReport report;
  report.position_gap = (curve.positions.back() - curve.positions.front()).norm();
  report.tangent_gap = (curve.frames.back().t - curve.frames.front().t).norm();
  report.defect = report.position_gap + report.tangent_gap;
  if (mode == ClosureMode::Planar)
    report.planar_integrals = planar_closure_integrals(curve.profile);
  return report;
}

namespace {

// Composite Simpson on node values; trapezoid fallback on the last cell when
// the interval count is odd. Exact for constants either way.
double quadrature(const std::vector<double>& values, double h) {
  const std::size_t intervals = values.size() - 1;
  const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 1;
  double sum = 0.0;
  if (simpson_end >= 2) {
    double acc = values[0] + values[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    sum += acc * h / 3.0;
  }
  if (simpson_end != intervals)
    sum += 0.5 * h * (values[intervals - 1] + values[intervals]);
  return sum;
}

}  // namespace

std::pair<double, double> planar_closure_integrals(const CurvatureTorsionProfile& profile) {
  profile.validate();
  if (!profile.is_planar())
    throw std::invalid_argument("planar_closure_integrals: requires tau == 0");

  const std::size_t n = profile.node_count();
  const double h = profile.node_spacing();

  // theta(s) = cumulative integral of kappa; the trapezoid rule integrates
  // the piecewise-linear interpolant exactly.
  std::vector<double> cos_theta(n), sin_theta(n);
  double theta = 0.0;
  cos_theta[0] = 1.0;
  sin_theta[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    theta += 0.5 * h * (profile.kappa[i - 1] + profile.kappa[i]);
    cos_theta[i] = std::cos(theta);
    sin_theta[i] = std::sin(theta);
  }
  return {quadrature(cos_theta, h), quadrature(sin_theta, h)};
}

}  // namespace elastica

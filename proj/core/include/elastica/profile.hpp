// Sampled curvature/torsion profiles on a uniform arclength grid.
#ifndef ELASTICA_PROFILE_HPP
#define ELASTICA_PROFILE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace elastica {

enum class ProfileInterpolation {
  PiecewiseConstantMidpoint,  // constant on each step, equal to the step midpoint value
  PiecewiseLinear,            // linear between nodes, sampled at step midpoints
};

/// (kappa, tau) sampled at the N+1 nodes s_i = i*L/N of a uniform grid.
struct CurvatureTorsionProfile {
  double length = 0.0;
  std::vector<double> kappa;
  std::vector<double> tau;
  ProfileInterpolation interpolation = ProfileInterpolation::PiecewiseLinear;

  std::size_t node_count() const { return kappa.size(); }
  std::size_t step_count() const { return kappa.empty() ? 0 : kappa.size() - 1; }
  double node_spacing() const { return length / static_cast<double>(step_count()); }
  double node_s(std::size_t i) const {
    return length * static_cast<double>(i) / static_cast<double>(step_count());
  }

  /// Midpoint sample on step i; for both interpolation modes this is the
  /// mean of the step's node values.
  double kappa_mid(std::size_t i) const { return 0.5 * (kappa[i] + kappa[i + 1]); }
  double tau_mid(std::size_t i) const { return 0.5 * (tau[i] + tau[i + 1]); }

  bool is_planar() const {
    for (double t : tau)
      if (t != 0.0) return false;
    return true;
  }

  void validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("profile: length must be positive");
    if (kappa.size() != tau.size())
      throw std::invalid_argument("profile: kappa/tau size mismatch");
    if (step_count() < 2) throw std::invalid_argument("profile: needs at least 2 steps");
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      if (!std::isfinite(kappa[i]) || !std::isfinite(tau[i]))
        throw std::invalid_argument("profile: non-finite value");
    }
  }

  static CurvatureTorsionProfile constant(double kappa_value, double tau_value, double length,
                                          std::size_t steps) {
    CurvatureTorsionProfile p;
    p.length = length;
    p.kappa.assign(steps + 1, kappa_value);
    p.tau.assign(steps + 1, tau_value);
    return p;
  }
};

}  // namespace elastica

#endif

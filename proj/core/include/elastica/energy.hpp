// Energy quadrature over profiles and sampled hypothesis probes for a density.
#ifndef ELASTICA_ENERGY_HPP
#define ELASTICA_ENERGY_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "elastica/density.hpp"
#include "elastica/profile.hpp"

namespace elastica {

/// E = int_0^L f(s, kappa(s), tau(s)) ds by composite Simpson quadrature on
/// the profile grid (trapezoid fallback on the last cell for odd counts).
double evaluate_energy(const EnergyDensity& density, const CurvatureTorsionProfile& profile);

struct ProbeBox {
  double a_min = -5.0, a_max = 5.0;
  double b_min = -5.0, b_max = 5.0;
};

struct ProbeOptions {
  ProbeBox box;
  std::size_t grid_a = 101;
  std::size_t grid_b = 101;
  double fd_step = 1e-7;             // relative central-difference step
  std::size_t convexity_pairs = 10000;
  std::uint64_t seed = 0x5eedf00d;
  double slack = 1e-12;              // scaled tolerance before counting a violation
};

struct ProbeViolation {
  std::size_t count = 0;
  double worst = 0.0;  // largest violation amount
  double a = 0.0, b = 0.0;
};

struct DensityProbeReport {
  bool coercivity_declared = false;
  ProbeViolation coercivity;
  ProbeViolation upper_growth;
  ProbeViolation partial_growth;
  ProbeViolation midpoint_convexity;
  /// max over samples of |fd - closed form| / max(1, |grad|_inf)
  double max_partial_deviation = 0.0;
};

/// Samples the box and checks the declared coercivity / growth bounds, the
/// partial-growth bound, midpoint convexity on random pairs, and closed-form
/// partials against central finite differences. Violations are reported,
/// never thrown.
DensityProbeReport probe_density(const EnergyDensity& density, const ProbeOptions& options);

}  // namespace elastica

#endif

// Direct minimization of the discretized energy over (kappa, tau) profiles
// with quadratic closure penalties.
//
// The unknowns are the node values of kappa and tau; the frame equations and
// the orthonormality constraint hold identically through the reconstruction,
// leaving only the closure conditions to penalize.
#ifndef ELASTICA_MINIMIZE_HPP
#define ELASTICA_MINIMIZE_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "elastica/density.hpp"
#include "elastica/frames.hpp"
#include "elastica/profile.hpp"

namespace elastica {

struct PenaltySchedule {
  double w_pos = 1.0;
  double w_tan = 1.0;
  double growth = 2.0;       // weight multiplier between continuation stages
  std::size_t max_stages = 60;
};

struct MinimizeOptions {
  std::size_t max_iterations = 50000;       // total accepted-step budget
  std::size_t max_stage_iterations = 2000;  // per continuation stage
  double grad_tol = 1e-4;                   // sup-norm gradient target per stage
  double gap_tol = 1e-6;                    // continuation target per closure gap
  double fd_step = 1e-6;                    // relative finite-difference step
  unsigned threads = 0;                     // gradient evaluation workers, 0 = hardware
  /// Called after every accepted descent step (iteration, objective, sup|grad|).
  std::function<void(std::size_t, double, double)> on_step;
};

struct DiscreteProblem {
  EnergyDensity density;
  double length = 2.0 * 3.141592653589793;
  std::size_t n = 100;  // grid steps; the profile has n+1 nodes
  PenaltySchedule penalty;
  MinimizeOptions options;

  void validate() const;
};

struct ObjectiveValue {
  double total = 0.0;
  double energy = 0.0;
  double position_gap = 0.0;  // |r(L) - r(0)|
  double tangent_gap = 0.0;   // |t(L) - t(0)|
};

/// E(profile) + w_pos |r(L)-r(0)|^2 + w_tan |t(L)-t(0)|^2 with the curve
/// reconstructed from the profile.
ObjectiveValue objective(const DiscreteProblem& problem, const CurvatureTorsionProfile& profile,
                         double w_pos, double w_tan);

struct MinimizationResult {
  CurvatureTorsionProfile profile;
  double energy = 0.0;
  double objective = 0.0;
  double position_gap = 0.0;
  double tangent_gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double final_w_pos = 0.0;
  double final_w_tan = 0.0;
};

/// Seeded default start: kappa = 2*pi/L plus uniform noise of amplitude
/// 0.1*(2*pi/L), tau = noise of the same amplitude.
CurvatureTorsionProfile default_start_profile(const DiscreteProblem& problem, std::uint64_t seed);

/// Gradient descent (Barzilai-Borwein trial step, Armijo backtracking) on the
/// 2(n+1) node values, central finite-difference gradients, with penalty
/// weights doubled whenever the closure gaps stall above the target.
MinimizationResult minimize_energy(const DiscreteProblem& problem,
                                   std::optional<CurvatureTorsionProfile> start = std::nullopt,
                                   std::uint64_t seed = 0);

}  // namespace elastica

#endif

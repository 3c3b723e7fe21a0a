#include "elastica/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "elastica/energy.hpp"
#include "elastica/parallel.hpp"
#include "elastica/random.hpp"

namespace elastica {

void DiscreteProblem::validate() const {
  if (n < 8) throw std::invalid_argument("discrete problem: needs at least 8 grid steps");
  if (!(length > 0.0)) throw std::invalid_argument("discrete problem: length must be positive");
  if (!(penalty.w_pos > 0.0 && penalty.w_tan > 0.0 && penalty.growth >= 1.0))
    throw std::invalid_argument("discrete problem: penalty weights must be positive and nondecreasing");
}

namespace {

CurvatureTorsionProfile profile_from_vector(const DiscreteProblem& problem,
                                            const std::vector<double>& x) {
  const std::size_t nodes = problem.n + 1;
  CurvatureTorsionProfile profile;
  profile.length = problem.length;
  profile.kappa.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nodes));
  profile.tau.assign(x.begin() + static_cast<std::ptrdiff_t>(nodes), x.end());
  return profile;
}

ObjectiveValue evaluate(const DiscreteProblem& problem, const CurvatureTorsionProfile& profile,
                        double w_pos, double w_tan) {
  ObjectiveValue value;
  value.energy = evaluate_energy(problem.density, profile);
  const FramedCurve curve = integrate_frame(profile, Frame::identity(), Vec3::Zero());
  value.position_gap = (curve.positions.back() - curve.positions.front()).norm();
  value.tangent_gap = (curve.frames.back().t - curve.frames.front().t).norm();
  value.total = value.energy + w_pos * value.position_gap * value.position_gap +
                w_tan * value.tangent_gap * value.tangent_gap;
  return value;
}

}  // namespace

ObjectiveValue objective(const DiscreteProblem& problem, const CurvatureTorsionProfile& profile,
                         double w_pos, double w_tan) {
  problem.validate();
  profile.validate();
  if (profile.step_count() != problem.n || profile.length != problem.length)
    throw std::invalid_argument("objective: profile grid does not match the problem");
  return evaluate(problem, profile, w_pos, w_tan);
}

CurvatureTorsionProfile default_start_profile(const DiscreteProblem& problem, std::uint64_t seed) {
  const double base = 2.0 * std::numbers::pi / problem.length;
  const double amplitude = 0.1 * base;
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  CurvatureTorsionProfile profile;
  profile.length = problem.length;
  profile.kappa.resize(problem.n + 1);
  profile.tau.resize(problem.n + 1);
  for (std::size_t i = 0; i <= problem.n; ++i)
    profile.kappa[i] = base + amplitude * rng.next_in(-1.0, 1.0);
  for (std::size_t i = 0; i <= problem.n; ++i)
    profile.tau[i] = amplitude * rng.next_in(-1.0, 1.0);
  return profile;
}

MinimizationResult minimize_energy(const DiscreteProblem& problem,
                                   std::optional<CurvatureTorsionProfile> start,
                                   std::uint64_t seed) {
  problem.validate();

  CurvatureTorsionProfile initial = start ? std::move(*start) : default_start_profile(problem, seed);
  initial.validate();
  if (initial.step_count() != problem.n)
    throw std::invalid_argument("minimize_energy: start profile grid mismatch");

  const std::size_t nodes = problem.n + 1;
  const std::size_t dim = 2 * nodes;
  std::vector<double> x(dim);
  std::copy(initial.kappa.begin(), initial.kappa.end(), x.begin());
  std::copy(initial.tau.begin(), initial.tau.end(),
            x.begin() + static_cast<std::ptrdiff_t>(nodes));

  double w_pos = problem.penalty.w_pos;
  double w_tan = problem.penalty.w_tan;
  const MinimizeOptions& opt = problem.options;

  auto objective_at = [&](const std::vector<double>& v) {
    return evaluate(problem, profile_from_vector(problem, v), w_pos, w_tan);
  };

  // Central finite differences; components are independent, evaluated on the
  // worker pool.
  auto gradient_at = [&](const std::vector<double>& v, std::vector<double>& g) {
    parallel_for(
        dim,
        [&](std::size_t i) {
          std::vector<double> probe = v;
          const double step = opt.fd_step * (1.0 + std::abs(v[i]));
          probe[i] = v[i] + step;
          const double up = objective_at(probe).total;
          probe[i] = v[i] - step;
          const double down = objective_at(probe).total;
          g[i] = (up - down) / (2.0 * step);
        },
        opt.threads);
  };

  ObjectiveValue current = objective_at(x);
  std::vector<double> grad(dim), prev_x, prev_grad;
  std::size_t total_iterations = 0;
  bool converged = false;

  for (std::size_t stage = 0; stage < problem.penalty.max_stages; ++stage) {
    prev_x.clear();
    prev_grad.clear();
    double step_scale = 0.0;

    for (std::size_t it = 0; it < opt.max_stage_iterations; ++it) {
      if (total_iterations >= opt.max_iterations) break;
      gradient_at(x, grad);

      double grad_sup = 0.0, grad_sq = 0.0;
      for (double g : grad) {
        grad_sup = std::max(grad_sup, std::abs(g));
        grad_sq += g * g;
      }
      if (grad_sup < opt.grad_tol) break;

      // Barzilai-Borwein trial step from the previous (x, grad) pair.
      double alpha = step_scale;
      if (!prev_x.empty()) {
        double sy = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
          const double s = x[i] - prev_x[i];
          const double y = grad[i] - prev_grad[i];
          sy += s * y;
          ss += s * s;
        }
        alpha = (sy > 1e-300) ? ss / sy : step_scale;
      }
      if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = 1.0 / std::max(1.0, grad_sup);
      alpha = std::clamp(alpha, 1e-12, 1e3);

      prev_x = x;
      prev_grad = grad;

      // Armijo backtracking along -grad.
      bool accepted = false;
      std::vector<double> trial(dim);
      for (int backtrack = 0; backtrack < 40; ++backtrack) {
        for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] - alpha * grad[i];
        const ObjectiveValue candidate = objective_at(trial);
        if (candidate.total <= current.total - 1e-4 * alpha * grad_sq) {
          x.swap(trial);
          current = candidate;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      step_scale = alpha;
      ++total_iterations;
      if (opt.on_step) opt.on_step(total_iterations, current.total, grad_sup);
      if (!accepted) break;  // no descent at the smallest step: stage is done
    }

    const bool gaps_met = current.position_gap <= opt.gap_tol && current.tangent_gap <= opt.gap_tol;
    if (gaps_met) {
      converged = true;
      break;
    }
    if (total_iterations >= opt.max_iterations) break;
    w_pos *= problem.penalty.growth;
    w_tan *= problem.penalty.growth;
    current = objective_at(x);  // re-evaluate under the new weights
  }

  MinimizationResult result;
  result.profile = profile_from_vector(problem, x);
  result.energy = current.energy;
  result.objective = current.total;
  result.position_gap = current.position_gap;
  result.tangent_gap = current.tangent_gap;
  result.iterations = total_iterations;
  result.converged = converged;
  result.final_w_pos = w_pos;
  result.final_w_tan = w_tan;
  return result;
}

}  // namespace elastica

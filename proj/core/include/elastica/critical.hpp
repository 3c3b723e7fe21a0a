// Critical-point ODE systems for elastic energies, solved as initial value
// problems, plus the certificates that check solutions after the fact:
// conserved quantities, reconstructed Lagrange multipliers and the residuals
// of the multiplier-free first-order conditions.
//
// Models:
//   planar elastica     2 k'' + k^3 - c1 k = 0, tau = 0
//   space elastica      2 k'' - 2 c2^2/k^3 + k^3 - c1 k = 0, tau = c2/k^2
//   quadratic model     state (k, k', tau, u, u') with u = tau'/k:
//                         tau' = k u
//                         u''  = tau k' + tau^2 u
//                         k''  = k (c - (k^2+tau^2)/2) - 2 tau u' - k u^2
#ifndef ELASTICA_CRITICAL_HPP
#define ELASTICA_CRITICAL_HPP

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "elastica/density.hpp"
#include "elastica/frames.hpp"
#include "elastica/geometry.hpp"
#include "elastica/profile.hpp"

namespace elastica {

enum class ModelKind { Planar, Space, Quadratic };

struct ElasticaParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double length = 0.0;

  void validate(ModelKind kind) const;
};

struct QuadraticModelParams {
  double c = 0.0;
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double tau0 = 0.0;   // tau(0)
  double tau1 = 0.0;   // tau'(0)
  double tau2 = 0.0;   // tau''(0)
  double length = 0.0;

  void validate() const;
};

enum class Termination { Completed, CurvatureVanished, Diverged };

struct SolveOptions {
  double tol = 1e-10;       // relative tolerance; absolute defaults to the same
  double abs_tol = -1.0;    // negative = use tol
  std::size_t samples = 4096;  // uniform output grid intervals
  /// Step cap. 0 = automatic: grid-producing solves cap accepted steps at the
  /// output spacing so the dense interpolant carries the solver accuracy;
  /// the closure objective, which keeps no grid, runs unlimited. Negative =
  /// always unlimited (conservation drift then reflects pure tolerance
  /// control). Positive = explicit cap.
  double max_step = 0.0;
  double kappa_floor = 1e-8;   // event threshold for |kappa|
  std::size_t max_steps = 2'000'000;

  double effective_abs_tol() const { return abs_tol < 0.0 ? tol : abs_tol; }
  double effective_max_step(double span) const {
    if (max_step > 0.0) return max_step;
    if (max_step < 0.0) return 0.0;
    return span / static_cast<double>(samples);
  }
};

/// One solver state, uniform across models (u, u_p meaningful only for the
/// quadratic model).
struct StateSample {
  double s = 0.0;
  double kappa = 0.0, kappa_p = 0.0;
  double tau = 0.0, tau_p = 0.0;
  double u = 0.0, u_p = 0.0;
};

struct ODESolution {
  ModelKind kind = ModelKind::Planar;
  std::variant<ElasticaParams, QuadraticModelParams> params;
  Termination termination = Termination::Completed;
  double stop_s = 0.0;  // reached arclength; event location when truncated
  std::string diagnostic;

  // Uniform output grid over [0, stop_s].
  std::vector<double> s;
  std::vector<double> kappa, kappa_p;
  std::vector<double> tau, tau_p;
  std::vector<double> u, u_p;  // quadratic model only

  // Exact solver states at accepted steps (for conserved-quantity checks).
  std::vector<StateSample> steps;

  bool completed() const { return termination == Termination::Completed; }
  double min_abs_kappa() const;
  /// kappa'' from the model's right-hand side at grid node i.
  double kappa_pp(std::size_t i) const;
  /// tau'' from the model's states at grid node i.
  double tau_pp(std::size_t i) const;

  CurvatureTorsionProfile profile() const;
};

ODESolution solve_planar_elastica(const ElasticaParams& params, const SolveOptions& options = {});
ODESolution solve_space_elastica(const ElasticaParams& params, const SolveOptions& options = {});
ODESolution solve_quadratic_model(const QuadraticModelParams& params,
                                  const SolveOptions& options = {});

/// First integral I = 2 k''/k - 2 tau^2 + k^2 of the elastica systems.
struct FirstIntegralReport {
  /// I per grid node with k'' from the ODE right-hand side; nodes with
  /// |kappa| below the floor carry NaN and are excluded from deviations.
  std::vector<double> values;
  double reference = 0.0;      // I at the first valid node
  double max_deviation = 0.0;  // sup |I - reference| over valid nodes
  /// Drift of the quadrature invariant k'^2 + k^4/4 - c1 k^2/2 + c2^2/k^2
  /// over accepted steps. Unlike `values`, which the right-hand side makes
  /// near-constant by construction, this measures accumulated integration
  /// error and shrinks with the solver tolerance.
  double quadrature_drift = 0.0;
};

FirstIntegralReport elastica_first_integral(const ODESolution& solution,
                                            double kappa_floor = 1e-8);

/// A solution path with enough derivative data for the multiplier formulas.
struct SolutionPath {
  std::vector<double> s;
  std::vector<double> kappa, kappa_p, kappa_pp;
  std::vector<double> tau, tau_p, tau_pp;
};

/// Derivatives from the model's right-hand side.
SolutionPath path_from_solution(const ODESolution& solution);

/// Derivatives by finite differences; for synthetic profiles that do not come
/// from a solver run.
SolutionPath path_from_samples(const std::vector<double>& s, const std::vector<double>& kappa,
                               const std::vector<double>& tau);

struct MultiplierWitness {
  std::vector<double> mu, mu_p;
  std::vector<Vec3> lambda;  // lambda(s) in world coordinates
  Vec3 lambda_mean = Vec3::Zero();
  double constancy_defect = 0.0;  // sup |lambda(s) - mean|
  double mu_residual = 0.0;       // sup |fd(f_b) - mu kappa|
};

/// Reconstructs mu = f_b'/kappa and lambda(s) from the first-order system
///   f_b' = mu kappa
///   -f_a' = mu tau + lambda.n
///   kappa f_b - tau f_a = -mu' + lambda.b
/// with lambda.t from the multiplier-free form. Constancy of lambda(s)
/// certifies criticality; drift flags a non-solution.
MultiplierWitness multiplier_witness(const EnergyDensity& density, const SolutionPath& path,
                                     const std::vector<Frame>& frames,
                                     double kappa_floor = 1e-8);
MultiplierWitness multiplier_witness(const EnergyDensity& density, const ODESolution& solution,
                                     const FramedCurve& curve, double kappa_floor = 1e-8);

struct Reg1Report {
  std::vector<double> residual1, residual2;
  double sup1 = 0.0, sup2 = 0.0;
};

/// Residuals of the two multiplier-free first-order conditions
///   2 (tau f_a)' - tau' f_a - (f_b'/kappa)'' + (tau^2/kappa) f_b' - (kappa f_b)' = 0
///   -kappa f_a' - tau f_b' = (f_a''/kappa - (tau^2/kappa) f_a
///                             + (2 tau/kappa)(f_b'/kappa)' + tau' f_b'/kappa^2 + tau f_b)'
/// evaluated along the solution. Inner derivatives come from the chain rule on
/// the ODE states; outer derivatives use 5-point central differences.
Reg1Report reg1_residual(const EnergyDensity& density, const ODESolution& solution,
                         double kappa_floor = 1e-8);

/// Conservation monitor of the quadratic model: Q = k''/k + (2 tau/k) u' + u^2
/// + (k^2+tau^2)/2 minus the constant c, with k'' recomputed by finite
/// differences. Returns the sup norm over the grid.
double quadratic_conservation_monitor(const ODESolution& solution);

}  // namespace elastica

#endif

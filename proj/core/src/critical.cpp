#include "elastica/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "elastica/ode.hpp"

namespace elastica {

namespace {

constexpr std::size_t kMinSamples = 8;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// 4th-order finite differences on a uniform grid, one-sided at the ends.
std::vector<double> derivative_series(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n);
  if (n < 5) throw std::invalid_argument("derivative_series: needs at least 5 nodes");
  d[0] = (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) / (12 * h);
  d[1] = (-3 * y[0] - 10 * y[1] + 18 * y[2] - 6 * y[3] + y[4]) / (12 * h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (y[i - 2] - 8 * y[i - 1] + 8 * y[i + 1] - y[i + 2]) / (12 * h);
  d[n - 2] = (3 * y[n - 1] + 10 * y[n - 2] - 18 * y[n - 3] + 6 * y[n - 4] - y[n - 5]) / (12 * h);
  d[n - 1] = (25 * y[n - 1] - 48 * y[n - 2] + 36 * y[n - 3] - 16 * y[n - 4] + 3 * y[n - 5]) / (12 * h);
  return d;
}

std::vector<double> second_derivative_series(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n);
  if (n < 6) throw std::invalid_argument("second_derivative_series: needs at least 6 nodes");
  const double h2 = h * h;
  auto forward = [&](std::size_t i, int dir) {
    const auto at = [&](int k) { return y[i + static_cast<std::size_t>(dir * k)]; };
    return (45 * at(0) - 154 * at(1) + 214 * at(2) - 156 * at(3) + 61 * at(4) - 10 * at(5)) /
           (12 * h2);
  };
  auto semi = [&](std::size_t i, int dir) {
    const auto at = [&](int k) { return y[i + static_cast<std::size_t>(dir * k)]; };
    return (10 * at(-1) - 15 * at(0) - 4 * at(1) + 14 * at(2) - 6 * at(3) + at(4)) / (12 * h2);
  };
  d[0] = forward(0, 1);
  d[1] = semi(1, 1);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-y[i - 2] + 16 * y[i - 1] - 30 * y[i] + 16 * y[i + 1] - y[i + 2]) / (12 * h2);
  d[n - 2] = semi(n - 2, -1);
  d[n - 1] = forward(n - 1, -1);
  return d;
}

double elastica_kappa_pp(const ElasticaParams& p, double kappa) {
  double rhs = p.c1 * kappa - kappa * kappa * kappa;
  if (p.c2 != 0.0) rhs += 2.0 * p.c2 * p.c2 / (kappa * kappa * kappa);
  return 0.5 * rhs;
}

// Output grid the integrator lands on exactly (completed runs read solver
// states, not interpolants).
std::vector<double> make_targets(double length, std::size_t samples) {
  std::vector<double> t(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i)
    t[i] = length * static_cast<double>(i) / static_cast<double>(samples);
  return t;
}

OdeOptions make_ode_options(const SolveOptions& options, double span) {
  OdeOptions ode;
  ode.rel_tol = options.tol;
  ode.abs_tol = options.effective_abs_tol();
  ode.max_step = options.effective_max_step(span);
  ode.max_steps = options.max_steps;
  return ode;
}

template <std::size_t N>
void finish_solution(ODESolution& solution, const OdeTrajectory<N>& traj,
                     const SolveOptions& options) {
  switch (traj.status) {
    case OdeStatus::Completed:
      solution.termination = Termination::Completed;
      break;
    case OdeStatus::EventStopped:
      solution.termination = Termination::CurvatureVanished;
      break;
    case OdeStatus::Diverged:
      solution.termination = Termination::Diverged;
      solution.diagnostic = "integration failed (non-finite state or step underflow) at s = " +
                            std::to_string(traj.s_end);
      break;
  }
  solution.stop_s = traj.s_end;

  const std::size_t m = options.samples;
  require(m >= kMinSamples, "solve: samples too small");
  solution.s.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    solution.s[i] = traj.s_end * static_cast<double>(i) / static_cast<double>(m);
}

}  // namespace

void ElasticaParams::validate(ModelKind kind) const {
  require(length > 0.0, "elastica params: length must be positive");
  require(std::isfinite(c1) && std::isfinite(c2) && std::isfinite(kappa0) && std::isfinite(kappa1),
          "elastica params: non-finite value");
  if (kind == ModelKind::Planar) require(c2 == 0.0, "planar elastica requires c2 = 0");
  if (kind == ModelKind::Space && c2 != 0.0)
    require(kappa0 != 0.0, "space elastica with c2 != 0 requires kappa0 != 0");
}

void QuadraticModelParams::validate() const {
  require(length > 0.0, "quadratic params: length must be positive");
  require(std::isfinite(c) && std::isfinite(kappa0) && std::isfinite(kappa1) &&
              std::isfinite(tau0) && std::isfinite(tau1) && std::isfinite(tau2),
          "quadratic params: non-finite value");
  require(kappa0 != 0.0, "quadratic model requires kappa0 != 0");
}

double ODESolution::min_abs_kappa() const {
  double m = std::numeric_limits<double>::infinity();
  for (double k : kappa) m = std::min(m, std::abs(k));
  return m;
}

double ODESolution::kappa_pp(std::size_t i) const {
  if (kind == ModelKind::Quadratic) {
    const auto& p = std::get<QuadraticModelParams>(params);
    const double k = kappa[i], t = tau[i];
    return k * (p.c - 0.5 * (k * k + t * t)) - 2.0 * t * u_p[i] - k * u[i] * u[i];
  }
  return elastica_kappa_pp(std::get<ElasticaParams>(params), kappa[i]);
}

double ODESolution::tau_pp(std::size_t i) const {
  switch (kind) {
    case ModelKind::Planar:
      return 0.0;
    case ModelKind::Space: {
      const auto& p = std::get<ElasticaParams>(params);
      if (p.c2 == 0.0) return 0.0;
      const double k = kappa[i], kp = kappa_p[i];
      return -2.0 * p.c2 * (k * kappa_pp(i) - 3.0 * kp * kp) / (k * k * k * k);
    }
    case ModelKind::Quadratic:
      return kappa_p[i] * u[i] + kappa[i] * u_p[i];
  }
  return 0.0;
}

CurvatureTorsionProfile ODESolution::profile() const {
  CurvatureTorsionProfile p;
  p.length = stop_s;
  p.kappa = kappa;
  p.tau = tau;
  return p;
}

ODESolution solve_planar_elastica(const ElasticaParams& params, const SolveOptions& options) {
  params.validate(ModelKind::Planar);

  auto rhs = [&params](double, const std::array<double, 2>& y, std::array<double, 2>& f) {
    f[0] = y[1];
    f[1] = 0.5 * (params.c1 * y[0] - y[0] * y[0] * y[0]);
  };
  const auto targets = make_targets(params.length, options.samples);
  const auto traj = integrate_ode<2>(rhs, {params.kappa0, params.kappa1}, 0.0, params.length,
                                     make_ode_options(options, params.length), nullptr, &targets);

  ODESolution sol;
  sol.kind = ModelKind::Planar;
  sol.params = params;
  finish_solution(sol, traj, options);

  const std::size_t n = sol.s.size();
  sol.kappa.resize(n);
  sol.kappa_p.resize(n);
  sol.tau.assign(n, 0.0);
  sol.tau_p.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = traj.eval(sol.s[i]);
    sol.kappa[i] = y[0];
    sol.kappa_p[i] = y[1];
  }
  sol.steps.reserve(traj.nodes.size());
  for (const auto& node : traj.nodes)
    sol.steps.push_back({node.s, node.y[0], node.y[1], 0.0, 0.0, 0.0, 0.0});
  return sol;
}

ODESolution solve_space_elastica(const ElasticaParams& params, const SolveOptions& options) {
  params.validate(ModelKind::Space);
  const double c2 = params.c2;
  if (c2 != 0.0)
    require(std::abs(params.kappa0) >= options.kappa_floor,
            "space elastica: |kappa0| below the curvature floor");

  auto rhs = [&params](double, const std::array<double, 2>& y, std::array<double, 2>& f) {
    f[0] = y[1];
    f[1] = elastica_kappa_pp(params, y[0]);
  };
  std::function<double(double, const std::array<double, 2>&)> event;
  if (c2 != 0.0) {
    const double floor = options.kappa_floor;
    event = [floor](double, const std::array<double, 2>& y) { return std::abs(y[0]) - floor; };
  }
  const auto targets = make_targets(params.length, options.samples);
  const auto traj = integrate_ode<2>(rhs, {params.kappa0, params.kappa1}, 0.0, params.length,
                                     make_ode_options(options, params.length), event, &targets);

  ODESolution sol;
  sol.kind = ModelKind::Space;
  sol.params = params;
  finish_solution(sol, traj, options);

  const std::size_t n = sol.s.size();
  sol.kappa.resize(n);
  sol.kappa_p.resize(n);
  sol.tau.resize(n);
  sol.tau_p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = traj.eval(sol.s[i]);
    const double k = y[0], kp = y[1];
    sol.kappa[i] = k;
    sol.kappa_p[i] = kp;
    // tau derived from kappa^2 tau = c2, exactly.
    sol.tau[i] = (c2 == 0.0) ? 0.0 : c2 / (k * k);
    sol.tau_p[i] = (c2 == 0.0) ? 0.0 : -2.0 * c2 * kp / (k * k * k);
  }
  sol.steps.reserve(traj.nodes.size());
  for (const auto& node : traj.nodes) {
    const double k = node.y[0], kp = node.y[1];
    const double t = (c2 == 0.0) ? 0.0 : c2 / (k * k);
    const double tp = (c2 == 0.0) ? 0.0 : -2.0 * c2 * kp / (k * k * k);
    sol.steps.push_back({node.s, k, kp, t, tp, 0.0, 0.0});
  }
  return sol;
}

ODESolution solve_quadratic_model(const QuadraticModelParams& params,
                                  const SolveOptions& options) {
  params.validate();
  require(std::abs(params.kappa0) >= options.kappa_floor,
          "quadratic model: |kappa0| below the curvature floor");

  // State (kappa, kappa', tau, u, u') with u = tau'/kappa.
  const double c = params.c;
  auto rhs = [c](double, const std::array<double, 5>& y, std::array<double, 5>& f) {
    const double k = y[0], kp = y[1], t = y[2], u = y[3], up = y[4];
    f[0] = kp;
    f[1] = k * (c - 0.5 * (k * k + t * t)) - 2.0 * t * up - k * u * u;
    f[2] = k * u;
    f[3] = up;
    f[4] = t * kp + t * t * u;
  };
  const double floor = options.kappa_floor;
  std::function<double(double, const std::array<double, 5>&)> event =
      [floor](double, const std::array<double, 5>& y) { return std::abs(y[0]) - floor; };

  const std::array<double, 5> y0 = {
      params.kappa0, params.kappa1, params.tau0, params.tau1 / params.kappa0,
      (params.tau2 * params.kappa0 - params.tau1 * params.kappa1) / (params.kappa0 * params.kappa0)};
  const auto targets = make_targets(params.length, options.samples);
  const auto traj = integrate_ode<5>(rhs, y0, 0.0, params.length,
                                     make_ode_options(options, params.length), event, &targets);

  ODESolution sol;
  sol.kind = ModelKind::Quadratic;
  sol.params = params;
  finish_solution(sol, traj, options);

  const std::size_t n = sol.s.size();
  sol.kappa.resize(n);
  sol.kappa_p.resize(n);
  sol.tau.resize(n);
  sol.tau_p.resize(n);
  sol.u.resize(n);
  sol.u_p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = traj.eval(sol.s[i]);
    sol.kappa[i] = y[0];
    sol.kappa_p[i] = y[1];
    sol.tau[i] = y[2];
    sol.u[i] = y[3];
    sol.u_p[i] = y[4];
    sol.tau_p[i] = y[0] * y[3];  // tau' = kappa u
  }
  sol.steps.reserve(traj.nodes.size());
  for (const auto& node : traj.nodes)
    sol.steps.push_back({node.s, node.y[0], node.y[1], node.y[2], node.y[0] * node.y[3], node.y[3],
                         node.y[4]});
  return sol;
}

FirstIntegralReport elastica_first_integral(const ODESolution& solution, double kappa_floor) {
  require(solution.kind != ModelKind::Quadratic,
          "first integral applies to the elastica models only");
  const auto& params = std::get<ElasticaParams>(solution.params);

  FirstIntegralReport report;
  const std::size_t n = solution.kappa.size();
  report.values.assign(n, std::numeric_limits<double>::quiet_NaN());

  bool have_reference = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = solution.kappa[i];
    if (std::abs(k) < kappa_floor) continue;  // I is defined only where kappa != 0
    const double t = solution.tau[i];
    const double value = 2.0 * solution.kappa_pp(i) / k - 2.0 * t * t + k * k;
    report.values[i] = value;
    if (!have_reference) {
      report.reference = value;
      have_reference = true;
    }
    report.max_deviation = std::max(report.max_deviation, std::abs(value - report.reference));
  }
  require(have_reference, "first integral: |kappa| below the floor everywhere");

  // Quadrature invariant H = k'^2 + k^4/4 - c1 k^2/2 + c2^2/k^2, evaluated at
  // exact solver states; H' = k' * (ODE residual) vanishes along solutions.
  auto invariant = [&params](const StateSample& q) {
    double h = q.kappa_p * q.kappa_p + 0.25 * std::pow(q.kappa, 4) -
               0.5 * params.c1 * q.kappa * q.kappa;
    if (params.c2 != 0.0) h += params.c2 * params.c2 / (q.kappa * q.kappa);
    return h;
  };
  const double h0 = invariant(solution.steps.front());
  for (const auto& q : solution.steps)
    report.quadrature_drift = std::max(report.quadrature_drift, std::abs(invariant(q) - h0));
  return report;
}

SolutionPath path_from_solution(const ODESolution& solution) {
  SolutionPath path;
  path.s = solution.s;
  path.kappa = solution.kappa;
  path.kappa_p = solution.kappa_p;
  path.tau = solution.tau;
  path.tau_p = solution.tau_p;
  const std::size_t n = solution.s.size();
  path.kappa_pp.resize(n);
  path.tau_pp.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    path.kappa_pp[i] = solution.kappa_pp(i);
    path.tau_pp[i] = solution.tau_pp(i);
  }
  return path;
}

SolutionPath path_from_samples(const std::vector<double>& s, const std::vector<double>& kappa,
                               const std::vector<double>& tau) {
  require(s.size() >= 6, "path_from_samples: needs at least 6 nodes");
  require(s.size() == kappa.size() && s.size() == tau.size(),
          "path_from_samples: size mismatch");
  const double h = s[1] - s[0];
  SolutionPath path;
  path.s = s;
  path.kappa = kappa;
  path.tau = tau;
  path.kappa_p = derivative_series(kappa, h);
  path.kappa_pp = second_derivative_series(kappa, h);
  path.tau_p = derivative_series(tau, h);
  path.tau_pp = second_derivative_series(tau, h);
  return path;
}

namespace {

struct ChainSeries {
  std::vector<double> fa, fb, fa_p, fb_p, fa_pp, fb_pp;
};

// s-derivatives of f_a and f_b along the path by the chain rule.
ChainSeries chain_series(const EnergyDensity& density, const SolutionPath& path) {
  const std::size_t n = path.s.size();
  ChainSeries out;
  out.fa.resize(n);
  out.fb.resize(n);
  out.fa_p.resize(n);
  out.fb_p.resize(n);
  out.fa_pp.resize(n);
  out.fb_pp.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DensityJet j = density.jet(path.s[i], path.kappa[i], path.tau[i]);
    const double kp = path.kappa_p[i], tp = path.tau_p[i];
    const double kpp = path.kappa_pp[i], tpp = path.tau_pp[i];
    out.fa[i] = j.fa;
    out.fb[i] = j.fb;
    out.fa_p[i] = j.faa * kp + j.fab * tp;
    out.fb_p[i] = j.fab * kp + j.fbb * tp;
    out.fa_pp[i] = j.faaa * kp * kp + 2.0 * j.faab * kp * tp + j.fabb * tp * tp + j.faa * kpp +
                   j.fab * tpp;
    out.fb_pp[i] = j.faab * kp * kp + 2.0 * j.fabb * kp * tp + j.fbbb * tp * tp + j.fab * kpp +
                   j.fbb * tpp;
  }
  return out;
}

}  // namespace

MultiplierWitness multiplier_witness(const EnergyDensity& density, const SolutionPath& path,
                                     const std::vector<Frame>& frames, double kappa_floor) {
  const std::size_t n = path.s.size();
  require(n >= 6, "multiplier_witness: too few nodes");
  require(frames.size() == n, "multiplier_witness: frame count does not match the path");
  for (double k : path.kappa)
    require(std::abs(k) >= kappa_floor, "multiplier_witness: |kappa| below the curvature floor");

  const ChainSeries f = chain_series(density, path);
  MultiplierWitness witness;
  witness.mu.resize(n);
  witness.mu_p.resize(n);
  witness.lambda.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double k = path.kappa[i], kp = path.kappa_p[i];
    const double t = path.tau[i], tp = path.tau_p[i];
    const double mu = f.fb_p[i] / k;
    const double mu_p = f.fb_pp[i] / k - mu * kp / k;
    witness.mu[i] = mu;
    witness.mu_p[i] = mu_p;

    const double lambda_n = -f.fa_p[i] - mu * t;
    const double lambda_b = k * f.fb[i] - t * f.fa[i] + mu_p;
    const double lambda_t = f.fa_pp[i] / k - (t * t / k) * f.fa[i] + (2.0 * t / k) * mu_p +
                            tp * f.fb_p[i] / (k * k) + t * f.fb[i];
    witness.lambda[i] =
        lambda_t * frames[i].t + lambda_n * frames[i].n + lambda_b * frames[i].b;
  }

  Vec3 mean = Vec3::Zero();
  for (const Vec3& v : witness.lambda) mean += v;
  mean /= static_cast<double>(n);
  witness.lambda_mean = mean;
  for (const Vec3& v : witness.lambda)
    witness.constancy_defect = std::max(witness.constancy_defect, (v - mean).norm());

  // Independent check of f_b' = mu kappa with f_b differentiated numerically.
  const double h = path.s[1] - path.s[0];
  const std::vector<double> fb_fd = derivative_series(f.fb, h);
  for (std::size_t i = 0; i < n; ++i)
    witness.mu_residual =
        std::max(witness.mu_residual, std::abs(fb_fd[i] - witness.mu[i] * path.kappa[i]));
  return witness;
}

MultiplierWitness multiplier_witness(const EnergyDensity& density, const ODESolution& solution,
                                     const FramedCurve& curve, double kappa_floor) {
  require(curve.node_count() == solution.s.size(),
          "multiplier_witness: curve nodes do not match the solution grid");
  return multiplier_witness(density, path_from_solution(solution), curve.frames, kappa_floor);
}

Reg1Report reg1_residual(const EnergyDensity& density, const ODESolution& solution,
                         double kappa_floor) {
  const SolutionPath path = path_from_solution(solution);
  const std::size_t n = path.s.size();
  require(n >= 6, "reg1_residual: too few nodes");
  for (double k : path.kappa)
    require(std::abs(k) >= kappa_floor, "reg1_residual: |kappa| below the curvature floor");

  const ChainSeries f = chain_series(density, path);
  const double h = path.s[1] - path.s[0];

  std::vector<double> mu(n), bracket(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = path.kappa[i], kp = path.kappa_p[i];
    const double t = path.tau[i], tp = path.tau_p[i];
    mu[i] = f.fb_p[i] / k;
    const double mu_p = f.fb_pp[i] / k - mu[i] * kp / k;
    bracket[i] = f.fa_pp[i] / k - (t * t / k) * f.fa[i] + (2.0 * t / k) * mu_p +
                 tp * f.fb_p[i] / (k * k) + t * f.fb[i];
  }
  const std::vector<double> mu_pp = second_derivative_series(mu, h);
  const std::vector<double> bracket_p = derivative_series(bracket, h);

  Reg1Report report;
  report.residual1.resize(n);
  report.residual2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = path.kappa[i], kp = path.kappa_p[i];
    const double t = path.tau[i], tp = path.tau_p[i];
    report.residual1[i] = 2.0 * (tp * f.fa[i] + t * f.fa_p[i]) - tp * f.fa[i] - mu_pp[i] +
                          (t * t / k) * f.fb_p[i] - (kp * f.fb[i] + k * f.fb_p[i]);
    report.residual2[i] = -k * f.fa_p[i] - t * f.fb_p[i] - bracket_p[i];
    report.sup1 = std::max(report.sup1, std::abs(report.residual1[i]));
    report.sup2 = std::max(report.sup2, std::abs(report.residual2[i]));
  }
  return report;
}

double quadratic_conservation_monitor(const ODESolution& solution) {
  require(solution.kind == ModelKind::Quadratic,
          "conservation monitor applies to the quadratic model only");
  const auto& params = std::get<QuadraticModelParams>(solution.params);
  const std::size_t n = solution.s.size();
  require(n >= 6, "conservation monitor: too few nodes");
  const double h = solution.s[1] - solution.s[0];

  const std::vector<double> kappa_pp_fd = second_derivative_series(solution.kappa, h);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = solution.kappa[i], t = solution.tau[i];
    const double q = kappa_pp_fd[i] / k + (2.0 * t / k) * solution.u_p[i] +
                     solution.u[i] * solution.u[i] + 0.5 * (k * k + t * t);
    sup = std::max(sup, std::abs(q - params.c));
  }
  return sup;
}

}  // namespace elastica

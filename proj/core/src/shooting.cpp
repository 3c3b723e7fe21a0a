#include "elastica/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "elastica/ode.hpp"
#include "elastica/parallel.hpp"
#include "elastica/random.hpp"

namespace elastica {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ElasticaParams elastica_params_from(ModelKind model, const std::vector<double>& p, double length) {
  ElasticaParams out;
  if (model == ModelKind::Planar) {
    out.c1 = p[0];
    out.c2 = 0.0;
    out.kappa0 = p[1];
    out.kappa1 = p[2];
  } else {
    out.c1 = p[0];
    out.c2 = p[1];
    out.kappa0 = p[2];
    out.kappa1 = p[3];
  }
  out.length = length;
  return out;
}

QuadraticModelParams quadratic_params_from(const std::vector<double>& p, double length) {
  return {p[0], p[1], p[2], p[3], p[4], p[5], length};
}

template <std::size_t N>
ClosureEvaluation closure_from_trajectory(const OdeTrajectory<N>& traj, std::size_t t_index,
                                          std::size_t r_index) {
  ClosureEvaluation eval;
  eval.stop_s = traj.s_end;
  switch (traj.status) {
    case OdeStatus::Completed:
      eval.termination = Termination::Completed;
      break;
    case OdeStatus::EventStopped:
      eval.termination = Termination::CurvatureVanished;
      break;
    case OdeStatus::Diverged:
      eval.termination = Termination::Diverged;
      break;
  }
  if (eval.termination != Termination::Completed) {
    eval.defect = kInf;
    eval.position_gap = kInf;
    eval.tangent_gap = kInf;
    return eval;
  }
  const auto& y = traj.y_end();
  const Vec3 r(y[r_index], y[r_index + 1], y[r_index + 2]);
  const Vec3 t(y[t_index], y[t_index + 1], y[t_index + 2]);
  eval.position_gap = r.norm();
  eval.tangent_gap = (t - Vec3::UnitX()).norm();
  eval.defect = eval.position_gap + eval.tangent_gap;
  return eval;
}

// The objective keeps no output grid, so the automatic step cap does not
// apply; only an explicit positive cap is honored.
OdeOptions objective_ode_options(const SolveOptions& options) {
  OdeOptions ode;
  ode.rel_tol = options.tol;
  ode.abs_tol = options.effective_abs_tol();
  ode.max_step = options.max_step > 0.0 ? options.max_step : 0.0;
  ode.max_steps = options.max_steps;
  return ode;
}

}  // namespace

std::size_t model_parameter_count(ModelKind model) {
  switch (model) {
    case ModelKind::Planar: return 3;
    case ModelKind::Space: return 4;
    case ModelKind::Quadratic: return 6;
  }
  return 0;
}

std::vector<std::string> model_parameter_names(ModelKind model) {
  switch (model) {
    case ModelKind::Planar: return {"c1", "kappa0", "kappa1"};
    case ModelKind::Space: return {"c1", "c2", "kappa0", "kappa1"};
    case ModelKind::Quadratic: return {"c", "kappa0", "kappa1", "tau0", "tau1", "tau2"};
  }
  return {};
}

ClosureEvaluation closure_objective(ModelKind model, const std::vector<double>& params,
                                    double length, const SolveOptions& options) {
  if (params.size() != model_parameter_count(model))
    throw std::invalid_argument("closure_objective: wrong parameter count for the model");
  for (double v : params)
    if (!std::isfinite(v)) throw std::invalid_argument("closure_objective: non-finite parameter");
  if (!(length > 0.0)) throw std::invalid_argument("closure_objective: length must be positive");

  const double floor = options.kappa_floor;

  // The curvature state is integrated together with the frame and the
  // position, clamped at the origin with the canonical frame, so the defect
  // carries the solver tolerance rather than a fixed-grid reconstruction
  // error.
  if (model == ModelKind::Quadratic) {
    const QuadraticModelParams qp = quadratic_params_from(params, length);
    qp.validate();
    if (std::abs(qp.kappa0) < floor) {
      // In-range sample that starts at the curvature floor: report the event
      // instead of rejecting, so searches can record the failed trial.
      ClosureEvaluation eval;
      eval.termination = Termination::CurvatureVanished;
      eval.defect = eval.position_gap = eval.tangent_gap = kInf;
      return eval;
    }
    const double c = qp.c;
    auto rhs = [c](double, const std::array<double, 17>& y, std::array<double, 17>& f) {
      const double k = y[0], kp = y[1], t = y[2], u = y[3], up = y[4];
      f[0] = kp;
      f[1] = k * (c - 0.5 * (k * k + t * t)) - 2.0 * t * up - k * u * u;
      f[2] = k * u;
      f[3] = up;
      f[4] = t * kp + t * t * u;
      for (int i = 0; i < 3; ++i) {
        const double tv = y[5 + i], nv = y[8 + i], bv = y[11 + i];
        f[5 + i] = k * nv;
        f[8 + i] = -k * tv + t * bv;
        f[11 + i] = -t * nv;
        f[14 + i] = tv;
      }
    };
    std::array<double, 17> y0{};
    y0[0] = qp.kappa0;
    y0[1] = qp.kappa1;
    y0[2] = qp.tau0;
    y0[3] = qp.tau1 / qp.kappa0;
    y0[4] = (qp.tau2 * qp.kappa0 - qp.tau1 * qp.kappa1) / (qp.kappa0 * qp.kappa0);
    y0[5] = 1.0;
    y0[9] = 1.0;
    y0[13] = 1.0;
    std::function<double(double, const std::array<double, 17>&)> event =
        [floor](double, const std::array<double, 17>& y) { return std::abs(y[0]) - floor; };
    const auto traj = integrate_ode<17>(rhs, y0, 0.0, length, objective_ode_options(options), event);
    return closure_from_trajectory(traj, 5, 14);
  }

  const ElasticaParams ep = elastica_params_from(model, params, length);
  ep.validate(model);
  const double c1 = ep.c1, c2 = ep.c2;
  if (model == ModelKind::Space && c2 != 0.0 && std::abs(ep.kappa0) < floor) {
    ClosureEvaluation eval;
    eval.termination = Termination::CurvatureVanished;
    eval.defect = eval.position_gap = eval.tangent_gap = kInf;
    return eval;
  }

  auto rhs = [c1, c2](double, const std::array<double, 14>& y, std::array<double, 14>& f) {
    const double k = y[0], kp = y[1];
    double kpp = c1 * k - k * k * k;
    double tau = 0.0;
    if (c2 != 0.0) {
      kpp += 2.0 * c2 * c2 / (k * k * k);
      tau = c2 / (k * k);
    }
    f[0] = kp;
    f[1] = 0.5 * kpp;
    for (int i = 0; i < 3; ++i) {
      const double tv = y[2 + i], nv = y[5 + i], bv = y[8 + i];
      f[2 + i] = k * nv;
      f[5 + i] = -k * tv + tau * bv;
      f[8 + i] = -tau * nv;
      f[11 + i] = tv;
    }
  };
  std::array<double, 14> y0{};
  y0[0] = ep.kappa0;
  y0[1] = ep.kappa1;
  y0[2] = 1.0;
  y0[6] = 1.0;
  y0[10] = 1.0;
  std::function<double(double, const std::array<double, 14>&)> event;
  if (model == ModelKind::Space && c2 != 0.0)
    event = [floor](double, const std::array<double, 14>& y) { return std::abs(y[0]) - floor; };
  const auto traj = integrate_ode<14>(rhs, y0, 0.0, length, objective_ode_options(options), event);
  return closure_from_trajectory(traj, 2, 11);
}

std::vector<SearchRecord> random_search(const SearchSpace& space, const SolveOptions& options,
                                        unsigned threads) {
  const std::size_t dim = model_parameter_count(space.model);
  if (space.ranges.size() != dim)
    throw std::invalid_argument("random_search: wrong range count for the model");
  for (const auto& r : space.ranges)
    if (!(r.lo <= r.hi)) throw std::invalid_argument("random_search: empty range");
  if (space.lengths.empty()) throw std::invalid_argument("random_search: no candidate lengths");
  if (!(space.threshold > 0.0)) throw std::invalid_argument("random_search: threshold must be positive");
  if (space.budget == 0) return {};

  std::vector<SearchRecord> records(space.budget);
  parallel_for(
      space.budget,
      [&](std::size_t i) {
        SplitMix64 rng = SplitMix64::stream(space.seed, i);
        SearchRecord rec;
        rec.trial = i;
        rec.params.resize(dim);
        for (std::size_t j = 0; j < dim; ++j)
          rec.params[j] = rng.next_in(space.ranges[j].lo, space.ranges[j].hi);
        rec.length = space.lengths[i % space.lengths.size()];
        const ClosureEvaluation eval =
            closure_objective(space.model, rec.params, rec.length, options);
        rec.defect = eval.defect;
        rec.termination = eval.termination;
        rec.accepted = eval.termination == Termination::Completed && rec.defect < space.threshold;
        records[i] = std::move(rec);
      },
      threads);

  std::sort(records.begin(), records.end(), [](const SearchRecord& a, const SearchRecord& b) {
    if (a.defect != b.defect) return a.defect < b.defect;
    if (a.params != b.params) return a.params < b.params;
    return a.trial < b.trial;
  });
  return records;
}

RefineResult refine(ModelKind model, const std::vector<double>& start, double length,
                    const RefineOptions& options) {
  const std::size_t dim = model_parameter_count(model);
  if (start.size() != dim) throw std::invalid_argument("refine: wrong parameter count");

  std::size_t evaluations = 0;
  auto objective = [&](const std::vector<double>& x) {
    ++evaluations;
    return closure_objective(model, x, length, options.solve).defect;
  };

  const double f_start = objective(start);
  if (!std::isfinite(f_start))
    throw std::invalid_argument("refine: start has no finite closure defect");

  // Nelder-Mead with the standard coefficients; initial simplex displaces one
  // coordinate at a time (absolute fallback for coordinates at zero).
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::vector<std::vector<double>> simplex(dim + 1, start);
  std::vector<double> f_values(dim + 1);
  for (std::size_t j = 0; j < dim; ++j) {
    double& coord = simplex[j + 1][j];
    coord += (coord != 0.0) ? options.simplex_scale * std::abs(coord)
                            : options.simplex_scale / 200.0;
  }
  f_values[0] = f_start;
  for (std::size_t j = 1; j <= dim; ++j) f_values[j] = objective(simplex[j]);

  auto order = [&]() {
    std::vector<std::size_t> idx(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return f_values[a] < f_values[b]; });
    return idx;
  };

  std::size_t iterations = 0;
  for (; iterations < options.max_iterations; ++iterations) {
    const auto idx = order();
    const std::size_t best = idx[0], worst = idx[dim], second_worst = idx[dim - 1];
    if (f_values[best] < options.threshold) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j)
        x[j] = centroid[j] + coeff * (simplex[worst][j] - centroid[j]);
      return x;
    };

    const std::vector<double> reflected = blend(-alpha);
    const double f_reflected = objective(reflected);

    if (f_reflected < f_values[best]) {
      const std::vector<double> expanded = blend(-alpha * gamma);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        f_values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        f_values[worst] = f_reflected;
      }
    } else if (f_reflected < f_values[second_worst]) {
      simplex[worst] = reflected;
      f_values[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < f_values[worst];
      const std::vector<double> contracted = blend(outside ? -rho : rho);
      const double f_contracted = objective(contracted);
      if (f_contracted < std::min(f_values[worst], f_reflected)) {
        simplex[worst] = contracted;
        f_values[worst] = f_contracted;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < dim; ++j)
            simplex[i][j] = simplex[best][j] + sigma * (simplex[i][j] - simplex[best][j]);
          f_values[i] = objective(simplex[i]);
        }
      }
    }
  }

  const auto idx = order();
  RefineResult result;
  result.params = simplex[idx[0]];
  result.defect = f_values[idx[0]];
  result.iterations = iterations;
  result.evaluations = evaluations;
  result.converged = result.defect < options.threshold;
  return result;
}

const std::vector<ReferenceRow>& reference_table(int table) {
  using std::numbers::pi;
  using std::numbers::sqrt2;
  static const std::vector<ReferenceRow> closed_planar = {
      {"circumference", ModelKind::Planar, {1.00824, 1.01227, 0.0003}, 2 * pi},
      {"lemniscate", ModelKind::Planar, {0.07911031, 0.0442, 0.046801}, 12 * pi},
  };
  static const std::vector<ReferenceRow> free_planar = {
      {"free-1", ModelKind::Planar, {0.08, 0.25, 0.0}, 22 * pi},
      {"free-2", ModelKind::Planar, {0.08, 0.06, 0.0}, 21 * pi},
      {"free-3", ModelKind::Planar, {0.5, 0.0, 0.001}, 8 * pi},
      {"free-4", ModelKind::Planar, {sqrt2, 0.0, 0.5}, 8 * pi},
      {"free-5", ModelKind::Planar, {1.0, 1.0, -1.0}, 8 * pi},
      {"free-6", ModelKind::Planar, {0.3, 0.91, 1.43}, 8 * pi},
  };
  static const std::vector<ReferenceRow> closed_space = {
      {"space-1", ModelKind::Space, {1.25316, 3.92702, 1.58313, 0.528316}, 16 * pi},
      {"space-2", ModelKind::Space, {0.08, 5.06, 2.53458, 4.04}, 3 * pi},
      {"space-3", ModelKind::Space, {2.06465, 4.38778, 1.51781, 1.47094}, 16 * pi},
      {"space-4", ModelKind::Space, {1.62767, 4.08942, 2.85503, 0.669953}, 30 * pi},
  };
  static const std::vector<ReferenceRow> quadratic_rows = {
      {"quadratic-1", ModelKind::Quadratic,
       {-0.1, 0.787616, 3.33006, 1.00144, 4.69347, 4.29121}, 0.929236143},
      {"quadratic-2", ModelKind::Quadratic,
       {0.01, 3.05775, 4.22982, 0.749952, 0.997559, 3.02353}, 0.8734864103},
      {"quadratic-3", ModelKind::Quadratic,
       {1.03, 1.95093, 1.6048, 8.21105, 0.508862, 3.25462}, 1.0579039889},
  };
  switch (table) {
    case 1: return closed_planar;
    case 2: return free_planar;
    case 3: return closed_space;
    case 4: return quadratic_rows;
    default: throw std::invalid_argument("reference_table: table must be 1..4");
  }
}

TableReport reproduce_table(int table, const ReproduceOptions& options) {
  TableReport report;
  report.table = table;

  for (const ReferenceRow& row : reference_table(table)) {
    TableRowResult result;
    result.row = row;

    ODESolution solution;
    SolveOptions solve = options.solve;
    if (row.model == ModelKind::Quadratic && solve.max_step <= 0.0) {
      // Keep accepted steps at the output resolution so the finite-difference
      // conservation monitor is not limited by dense-output interpolation.
      solve.max_step = row.length / static_cast<double>(solve.samples);
    }
    switch (row.model) {
      case ModelKind::Planar:
        solution = solve_planar_elastica(elastica_params_from(row.model, row.params, row.length),
                                         solve);
        break;
      case ModelKind::Space:
        solution = solve_space_elastica(elastica_params_from(row.model, row.params, row.length),
                                        solve);
        break;
      case ModelKind::Quadratic:
        solution = solve_quadratic_model(quadratic_params_from(row.params, row.length), solve);
        break;
    }
    result.termination = solution.termination;
    result.min_abs_kappa = solution.min_abs_kappa();

    const ClosureEvaluation eval =
        closure_objective(row.model, row.params, row.length, options.solve);
    result.defect = eval.defect;

    if (row.model == ModelKind::Quadratic && solution.completed())
      result.conservation = quadratic_conservation_monitor(solution);

    if (options.refine_rows && (table == 1 || table == 3) && std::isfinite(result.defect)) {
      RefineOptions refine_options = options.refine;
      refine_options.solve = options.solve;
      result.refined = refine(row.model, row.params, row.length, refine_options);
    }

    if (options.export_curves)
      result.curve = integrate_frame(solution.profile(), Frame::identity(), Vec3::Zero());

    report.rows.push_back(std::move(result));
  }
  return report;
}

}  // namespace elastica

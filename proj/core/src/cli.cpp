#include "elastica/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "elastica/critical.hpp"
#include "elastica/energy.hpp"
#include "elastica/frames.hpp"
#include "elastica/io.hpp"
#include "elastica/minimize.hpp"
#include "elastica/parallel.hpp"
#include "elastica/shooting.hpp"
#include "elastica/version.hpp"

namespace elastica::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json cfg;
  in >> cfg;
  if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
  return cfg;
}

/// Parses args (natural order); returns an exit code for help or usage errors.
std::optional<int> try_parse(CLI::App& app, std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
    return std::nullopt;
  } catch (const CLI::CallForHelp&) {
    std::printf("%s", app.help().c_str());
    return 0;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }
}

// Config value applies only when the flag was not given on the command line.
template <typename T>
void apply_config(const json& cfg, const char* key, const CLI::Option* opt, T& value) {
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::uint64_t resolve_seed(const json& cfg, const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt != nullptr && seed_opt->count() > 0) return flag_value;
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  if (const char* env = std::getenv("ELASTICA_SEED")) return std::strtoull(env, nullptr, 10);
  return flag_value;
}

void write_record(const std::string& path, const std::string& command, const json& config,
                  const json& metrics, const std::vector<std::string>& outputs, double duration) {
  json record;
  record["version"] = kVersion;
  record["command"] = command;
  record["config"] = config;
  record["metrics"] = metrics;
  record["outputs"] = outputs;
  record["duration_s"] = duration;
  atomic_write_file(path, record.dump(2) + "\n");
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::CurvatureVanished: return "curvature_vanished";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

ModelKind model_from_name(const std::string& name) {
  if (name == "planar") return ModelKind::Planar;
  if (name == "space") return ModelKind::Space;
  if (name == "quadratic") return ModelKind::Quadratic;
  throw std::invalid_argument("unknown model: " + name);
}

// Shared density flags.
struct DensityFlags {
  std::string name = "euler";
  double l1 = 1.0, l2 = 1.0, l3 = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--density", name, "euler | quadratic | sadowsky | langer_singer");
    app->add_option("--lambda1", l1, "langer_singer constant term");
    app->add_option("--lambda2", l2, "langer_singer torsion weight");
    app->add_option("--lambda3", l3, "langer_singer curvature weight");
  }

  EnergyDensity build() const {
    if (name == "langer_singer") return EnergyDensity::langer_singer(l1, l2, l3);
    return EnergyDensity::from_name(name);
  }

  json config() const {
    json cfg{{"density", name}};
    if (name == "langer_singer") {
      cfg["lambda1"] = l1;
      cfg["lambda2"] = l2;
      cfg["lambda3"] = l3;
    }
    return cfg;
  }
};

// Shared profile source: constants or a curve CSV.
struct ProfileFlags {
  double kappa = 1.0;
  double tau = 0.0;
  double length = 2.0 * std::numbers::pi;
  std::size_t n = 4096;
  std::string profile_path;

  void attach(CLI::App* app) {
    app->add_option("--kappa", kappa, "constant curvature");
    app->add_option("--tau", tau, "constant torsion");
    app->add_option("--length", length, "curve length");
    app->add_option("--n", n, "grid steps");
    app->add_option("--profile", profile_path, "curve CSV supplying s,kappa,tau");
  }

  CurvatureTorsionProfile build() const {
    if (!profile_path.empty()) return read_profile_csv(profile_path);
    return CurvatureTorsionProfile::constant(kappa, tau, length, n);
  }

  json config() const {
    if (!profile_path.empty()) return json{{"profile", profile_path}};
    return json{{"kappa", kappa}, {"tau", tau}, {"length", length}, {"n", n}};
  }
};

struct SolveFlags {
  std::string model = "planar";
  double c1 = 0.0, c2 = 0.0, k0 = 0.0, k1 = 0.0;
  double c = 0.0, tau0 = 0.0, tau1 = 0.0, tau2 = 0.0;
  double length = 2.0 * std::numbers::pi;
  std::size_t n = 4096;
  double tol = 1e-10;
  double kappa_floor = 1e-8;
  double max_step = 0.0;

  CLI::Option* model_opt = nullptr;

  void attach(CLI::App* app) {
    model_opt = app->add_option("--model", model, "planar | space | quadratic");
    app->add_option("--c1", c1, "elastica constant c1");
    app->add_option("--c2", c2, "elastica constant c2 (space model)");
    app->add_option("--k0", k0, "kappa(0)");
    app->add_option("--k1", k1, "kappa'(0)");
    app->add_option("--c", c, "quadratic model constant");
    app->add_option("--tau0", tau0, "tau(0) (quadratic model)");
    app->add_option("--tau1", tau1, "tau'(0) (quadratic model)");
    app->add_option("--tau2", tau2, "tau''(0) (quadratic model)");
    app->add_option("--length", length, "integration length");
    app->add_option("--n", n, "output grid steps");
    app->add_option("--tol", tol, "integrator tolerance");
    app->add_option("--kappa-floor", kappa_floor, "curvature event threshold");
    app->add_option("--max-step", max_step, "cap on the integrator step (0 = none)");
  }

  ModelKind kind() const { return model_from_name(model); }

  std::vector<double> params() const {
    switch (kind()) {
      case ModelKind::Planar: return {c1, k0, k1};
      case ModelKind::Space: return {c1, c2, k0, k1};
      case ModelKind::Quadratic: return {c, k0, k1, tau0, tau1, tau2};
    }
    return {};
  }

  SolveOptions solve_options() const {
    SolveOptions out;
    out.tol = tol;
    out.samples = n;
    out.kappa_floor = kappa_floor;
    out.max_step = max_step;
    return out;
  }

  ODESolution solve() const {
    switch (kind()) {
      case ModelKind::Planar:
        return solve_planar_elastica({c1, 0.0, k0, k1, length}, solve_options());
      case ModelKind::Space:
        return solve_space_elastica({c1, c2, k0, k1, length}, solve_options());
      case ModelKind::Quadratic:
        return solve_quadratic_model({c, k0, k1, tau0, tau1, tau2, length}, solve_options());
    }
    throw std::logic_error("unreachable");
  }

  json config() const {
    json cfg{{"model", model}, {"length", length}, {"n", n},
             {"tol", tol},     {"kappa_floor", kappa_floor}, {"max_step", max_step}};
    const auto names = model_parameter_names(kind());
    const auto values = params();
    for (std::size_t i = 0; i < names.size(); ++i) cfg[names[i]] = values[i];
    return cfg;
  }
};

json search_records_json(const std::vector<SearchRecord>& records, std::size_t limit) {
  json out = json::array();
  for (std::size_t i = 0; i < records.size() && i < limit; ++i) {
    const SearchRecord& r = records[i];
    out.push_back({{"trial", r.trial},
                   {"params", r.params},
                   {"length", r.length},
                   {"defect", std::isfinite(r.defect) ? json(r.defect) : json("inf")},
                   {"termination", termination_name(r.termination)},
                   {"accepted", r.accepted}});
  }
  return out;
}

// ----------------------------------------------------------------- integrate

int run_integrate(const std::vector<std::string>& args) {
  CLI::App app{"reconstruct a framed curve from a curvature/torsion profile"};
  ProfileFlags profile;
  std::string config_path, out_path, svg_path, plane = "xy", record_path;
  profile.attach(&app);
  app.add_option("--config", config_path, "JSON config (flags win)");
  app.add_option("--out", out_path, "curve CSV output");
  app.add_option("--svg", svg_path, "SVG output");
  app.add_option("--plane", plane, "projection plane: xy | xz | yz");
  app.add_option("--record", record_path, "run record JSON output");
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "kappa", app.get_option("--kappa"), profile.kappa);
  apply_config(cfg, "tau", app.get_option("--tau"), profile.tau);
  apply_config(cfg, "length", app.get_option("--length"), profile.length);
  apply_config(cfg, "n", app.get_option("--n"), profile.n);
  apply_config(cfg, "profile", app.get_option("--profile"), profile.profile_path);
  apply_config(cfg, "out", app.get_option("--out"), out_path);
  apply_config(cfg, "svg", app.get_option("--svg"), svg_path);
  apply_config(cfg, "plane", app.get_option("--plane"), plane);

  Stopwatch timer;
  const CurvatureTorsionProfile p = profile.build();
  const FramedCurve curve = integrate_frame(p, Frame::identity(), Vec3::Zero());
  const ClosureReport closure =
      closure_defect(curve, p.is_planar() ? ClosureMode::Planar : ClosureMode::Spatial);

  std::vector<std::string> outputs;
  if (!out_path.empty()) {
    write_curve_csv(curve, out_path);
    outputs.push_back(out_path);
  }
  if (!svg_path.empty()) {
    write_curve_svg(curve, svg_path, projection_plane_from_name(plane));
    outputs.push_back(svg_path);
  }

  std::printf("nodes=%zu position_gap=%.12g tangent_gap=%.12g defect=%.12g\n", curve.node_count(),
              closure.position_gap, closure.tangent_gap, closure.defect);

  if (!record_path.empty()) {
    json resolved = profile.config();
    resolved["plane"] = plane;
    json metrics{{"position_gap", closure.position_gap},
                 {"tangent_gap", closure.tangent_gap},
                 {"defect", closure.defect}};
    if (closure.planar_integrals) {
      metrics["closure_integral_c"] = closure.planar_integrals->first;
      metrics["closure_integral_s"] = closure.planar_integrals->second;
    }
    write_record(record_path, "integrate", resolved, metrics, outputs, timer.seconds());
  }
  return 0;
}

// -------------------------------------------------------------------- energy

int run_energy(const std::vector<std::string>& args) {
  CLI::App app{"evaluate the elastic energy of a profile"};
  DensityFlags density;
  ProfileFlags profile;
  std::string config_path, record_path;
  density.attach(&app);
  profile.attach(&app);
  app.add_option("--config", config_path, "JSON config (flags win)");
  app.add_option("--record", record_path, "run record JSON output");
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "density", app.get_option("--density"), density.name);
  apply_config(cfg, "kappa", app.get_option("--kappa"), profile.kappa);
  apply_config(cfg, "tau", app.get_option("--tau"), profile.tau);
  apply_config(cfg, "length", app.get_option("--length"), profile.length);
  apply_config(cfg, "n", app.get_option("--n"), profile.n);
  apply_config(cfg, "profile", app.get_option("--profile"), profile.profile_path);

  Stopwatch timer;
  const double energy = evaluate_energy(density.build(), profile.build());
  std::printf("energy=%.17g\n", energy);

  if (!record_path.empty()) {
    json resolved = profile.config();
    resolved.update(density.config());
    write_record(record_path, "energy", resolved, json{{"energy", energy}}, {}, timer.seconds());
  }
  return 0;
}

// --------------------------------------------------------------------- solve

int run_solve(const std::vector<std::string>& args) {
  CLI::App app{"solve a critical-point system and export the curve"};
  SolveFlags flags;
  std::string config_path, out_path, svg_path, plane = "xy", record_path;
  flags.attach(&app);
  app.add_option("--config", config_path, "JSON config (flags win)");
  app.add_option("--out", out_path, "curve CSV output");
  app.add_option("--svg", svg_path, "SVG output");
  app.add_option("--plane", plane, "projection plane: xy | xz | yz");
  app.add_option("--record", record_path, "run record JSON output");
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "model", flags.model_opt, flags.model);
  apply_config(cfg, "c1", app.get_option("--c1"), flags.c1);
  apply_config(cfg, "c2", app.get_option("--c2"), flags.c2);
  apply_config(cfg, "k0", app.get_option("--k0"), flags.k0);
  apply_config(cfg, "k1", app.get_option("--k1"), flags.k1);
  apply_config(cfg, "c", app.get_option("--c"), flags.c);
  apply_config(cfg, "tau0", app.get_option("--tau0"), flags.tau0);
  apply_config(cfg, "tau1", app.get_option("--tau1"), flags.tau1);
  apply_config(cfg, "tau2", app.get_option("--tau2"), flags.tau2);
  apply_config(cfg, "length", app.get_option("--length"), flags.length);
  apply_config(cfg, "n", app.get_option("--n"), flags.n);
  apply_config(cfg, "tol", app.get_option("--tol"), flags.tol);

  Stopwatch timer;
  const ODESolution solution = flags.solve();
  const FramedCurve curve = integrate_frame(solution.profile(), Frame::identity(), Vec3::Zero());
  const ClosureEvaluation closure =
      closure_objective(flags.kind(), flags.params(), flags.length, flags.solve_options());

  std::vector<std::string> outputs;
  if (!out_path.empty()) {
    write_curve_csv(curve, out_path);
    outputs.push_back(out_path);
  }
  if (!svg_path.empty()) {
    write_curve_svg(curve, svg_path, projection_plane_from_name(plane));
    outputs.push_back(svg_path);
  }

  std::printf("termination=%s stop_s=%.12g min|kappa|=%.12g defect=%.12g\n",
              termination_name(solution.termination), solution.stop_s, solution.min_abs_kappa(),
              closure.defect);

  if (!record_path.empty()) {
    json metrics{{"termination", termination_name(solution.termination)},
                 {"stop_s", solution.stop_s},
                 {"min_abs_kappa", solution.min_abs_kappa()},
                 {"defect", std::isfinite(closure.defect) ? json(closure.defect) : json("inf")}};
    write_record(record_path, "solve", flags.config(), metrics, outputs, timer.seconds());
  }
  return 0;
}

// -------------------------------------------------------------------- search

int run_search(const std::vector<std::string>& args) {
  CLI::App app{"randomized search for closed curves"};
  std::string model = "planar", config_path, out_path;
  std::size_t budget = 1000;
  double threshold = 1e-6, tol = 1e-8;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  auto* model_opt = app.add_option("--model", model, "planar | space | quadratic");
  app.add_option("--config", config_path, "JSON config with ranges/lengths (flags win)");
  auto* budget_opt = app.add_option("--budget", budget, "number of trials");
  auto* threshold_opt = app.add_option("--threshold", threshold, "acceptance threshold on d");
  auto* tol_opt = app.add_option("--tol", tol, "integrator tolerance");
  auto* seed_opt = app.add_option("--seed", seed, "search seed");
  app.add_option("--threads", threads, "worker cap (0 = hardware)");
  app.add_option("--out", out_path, "run record JSON output")->required();
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "model", model_opt, model);
  apply_config(cfg, "budget", budget_opt, budget);
  apply_config(cfg, "threshold", threshold_opt, threshold);
  apply_config(cfg, "tol", tol_opt, tol);
  seed = resolve_seed(cfg, seed_opt, seed);

  SearchSpace space;
  space.model = model_from_name(model);
  space.budget = budget;
  space.threshold = threshold;
  space.seed = seed;

  const auto names = model_parameter_names(space.model);
  if (!cfg.contains("ranges")) throw std::invalid_argument("search: config needs a 'ranges' object");
  for (const auto& name : names) {
    if (!cfg.at("ranges").contains(name))
      throw std::invalid_argument("search: missing range for parameter " + name);
    const auto& pair = cfg.at("ranges").at(name);
    space.ranges.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  }
  if (!cfg.contains("lengths")) throw std::invalid_argument("search: config needs 'lengths'");
  space.lengths = cfg.at("lengths").get<std::vector<double>>();

  SolveOptions solve;
  solve.tol = tol;

  Stopwatch timer;
  const auto records = random_search(space, solve, threads);

  std::size_t accepted = 0;
  for (const auto& r : records) accepted += r.accepted ? 1 : 0;
  const double best = records.empty() ? std::numeric_limits<double>::infinity()
                                      : records.front().defect;
  std::printf("trials=%zu accepted=%zu best_defect=%.12g\n", records.size(), accepted, best);

  json ranges = json::object();
  for (std::size_t i = 0; i < names.size(); ++i)
    ranges[names[i]] = {space.ranges[i].lo, space.ranges[i].hi};
  json resolved{{"model", model},   {"budget", budget},        {"threshold", threshold},
                {"tol", tol},       {"seed", seed},            {"ranges", ranges},
                {"lengths", space.lengths}};
  json metrics{{"trials", records.size()},
               {"accepted", accepted},
               {"best_defect", std::isfinite(best) ? json(best) : json("inf")},
               {"top", search_records_json(records, 20)}};
  write_record(out_path, "search", resolved, metrics, {out_path}, timer.seconds());
  return 0;
}

// -------------------------------------------------------------------- refine

int run_refine(const std::vector<std::string>& args) {
  CLI::App app{"local refinement of ODE constants toward a closed curve"};
  SolveFlags flags;
  std::string config_path, out_path;
  double threshold = 1e-6;
  std::size_t max_iterations = 2000;
  flags.attach(&app);
  app.add_option("--config", config_path, "JSON config (flags win)");
  auto* threshold_opt = app.add_option("--threshold", threshold, "target defect");
  auto* iter_opt = app.add_option("--max-iter", max_iterations, "simplex iteration cap");
  app.add_option("--out", out_path, "run record JSON output")->required();
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "model", flags.model_opt, flags.model);
  apply_config(cfg, "threshold", threshold_opt, threshold);
  apply_config(cfg, "max_iter", iter_opt, max_iterations);

  Stopwatch timer;
  RefineOptions options;
  options.threshold = threshold;
  options.max_iterations = max_iterations;
  options.solve = flags.solve_options();

  const double start_defect =
      closure_objective(flags.kind(), flags.params(), flags.length, options.solve).defect;
  const RefineResult result = refine(flags.kind(), flags.params(), flags.length, options);

  std::printf("start_defect=%.12g refined_defect=%.12g iterations=%zu converged=%d\n",
              start_defect, result.defect, result.iterations, result.converged ? 1 : 0);

  const auto names = model_parameter_names(flags.kind());
  json refined = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) refined[names[i]] = result.params[i];
  json resolved = flags.config();
  resolved["threshold"] = threshold;
  resolved["max_iter"] = max_iterations;
  json metrics{{"start_defect", start_defect},
               {"defect", result.defect},
               {"iterations", result.iterations},
               {"evaluations", result.evaluations},
               {"converged", result.converged},
               {"refined_params", refined}};
  write_record(out_path, "refine", resolved, metrics, {out_path}, timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ minimize

int run_minimize(const std::vector<std::string>& args) {
  CLI::App app{"direct minimization of the discretized energy"};
  DensityFlags density;
  std::string config_path, out_path, curve_path;
  double length = 2.0 * std::numbers::pi;
  std::size_t n = 100, max_iterations = 50000;
  double gap_tol = 1e-6;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  density.attach(&app);
  app.add_option("--config", config_path, "JSON config (flags win)");
  auto* length_opt = app.add_option("--length", length, "curve length");
  auto* n_opt = app.add_option("--n", n, "grid steps");
  auto* iter_opt = app.add_option("--max-iter", max_iterations, "iteration cap");
  auto* gap_opt = app.add_option("--gap-tol", gap_tol, "closure gap target");
  auto* seed_opt = app.add_option("--seed", seed, "start-profile seed");
  app.add_option("--threads", threads, "worker cap (0 = hardware)");
  app.add_option("--out", out_path, "run record JSON output")->required();
  app.add_option("--curve", curve_path, "final curve CSV output");
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "density", app.get_option("--density"), density.name);
  apply_config(cfg, "length", length_opt, length);
  apply_config(cfg, "n", n_opt, n);
  apply_config(cfg, "max_iter", iter_opt, max_iterations);
  apply_config(cfg, "gap_tol", gap_opt, gap_tol);
  seed = resolve_seed(cfg, seed_opt, seed);

  Stopwatch timer;
  DiscreteProblem problem;
  problem.density = density.build();
  problem.length = length;
  problem.n = n;
  problem.options.max_iterations = max_iterations;
  problem.options.gap_tol = gap_tol;
  problem.options.threads = threads;

  const MinimizationResult result = minimize_energy(problem, std::nullopt, seed);

  std::vector<std::string> outputs{out_path};
  if (!curve_path.empty()) {
    const FramedCurve curve = integrate_frame(result.profile, Frame::identity(), Vec3::Zero());
    write_curve_csv(curve, curve_path);
    outputs.push_back(curve_path);
  }

  std::printf("energy=%.12g position_gap=%.3g tangent_gap=%.3g iterations=%zu converged=%d\n",
              result.energy, result.position_gap, result.tangent_gap, result.iterations,
              result.converged ? 1 : 0);

  json resolved = density.config();
  resolved["length"] = length;
  resolved["n"] = n;
  resolved["max_iter"] = max_iterations;
  resolved["gap_tol"] = gap_tol;
  resolved["seed"] = seed;
  json metrics{{"energy", result.energy},
               {"objective", result.objective},
               {"position_gap", result.position_gap},
               {"tangent_gap", result.tangent_gap},
               {"iterations", result.iterations},
               {"converged", result.converged}};
  write_record(out_path, "minimize", resolved, metrics, outputs, timer.seconds());
  return 0;
}

// -------------------------------------------------------------------- verify

int run_verify(const std::vector<std::string>& args) {
  CLI::App app{"check conservation, multipliers and first-order residuals on a solve"};
  SolveFlags flags;
  DensityFlags density;
  std::string config_path, record_path;
  flags.attach(&app);
  density.attach(&app);
  app.add_option("--config", config_path, "JSON config (flags win)");
  app.add_option("--record", record_path, "run record JSON output");
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "model", flags.model_opt, flags.model);
  apply_config(cfg, "density", app.get_option("--density"), density.name);

  Stopwatch timer;
  SolveOptions solve = flags.solve_options();
  if (solve.max_step <= 0.0) {
    // Step cap at the grid resolution keeps the finite-difference residuals
    // below the interpolation error of the dense output.
    solve.max_step = flags.length / static_cast<double>(solve.samples);
  }
  SolveFlags capped = flags;
  capped.max_step = solve.max_step;
  const ODESolution solution = capped.solve();
  const EnergyDensity dens = density.build();

  json metrics{{"termination", termination_name(solution.termination)},
               {"min_abs_kappa", solution.min_abs_kappa()}};
  std::printf("termination=%s min|kappa|=%.12g\n", termination_name(solution.termination),
              solution.min_abs_kappa());

  if (solution.kind != ModelKind::Quadratic) {
    const FirstIntegralReport fi = elastica_first_integral(solution, flags.kappa_floor);
    std::printf("first_integral: reference=%.12g max_deviation=%.3g quadrature_drift=%.3g\n",
                fi.reference, fi.max_deviation, fi.quadrature_drift);
    metrics["first_integral_reference"] = fi.reference;
    metrics["first_integral_deviation"] = fi.max_deviation;
    metrics["quadrature_drift"] = fi.quadrature_drift;
  } else {
    const double q = quadratic_conservation_monitor(solution);
    std::printf("conservation_monitor=%.3g\n", q);
    metrics["conservation_monitor"] = q;
  }

  try {
    const FramedCurve curve = integrate_frame(solution.profile(), Frame::identity(), Vec3::Zero());
    const MultiplierWitness witness =
        multiplier_witness(dens, solution, curve, flags.kappa_floor);
    std::printf("witness: constancy_defect=%.3g mu_residual=%.3g\n", witness.constancy_defect,
                witness.mu_residual);
    metrics["witness_defect"] = witness.constancy_defect;
    metrics["witness_mu_residual"] = witness.mu_residual;

    const Reg1Report reg1 = reg1_residual(dens, solution, flags.kappa_floor);
    std::printf("first_order_residuals: sup1=%.3g sup2=%.3g\n", reg1.sup1, reg1.sup2);
    metrics["residual1_sup"] = reg1.sup1;
    metrics["residual2_sup"] = reg1.sup2;
  } catch (const std::invalid_argument& e) {
    std::printf("witness/residuals skipped: %s\n", e.what());
    metrics["witness_skipped"] = e.what();
  }

  if (!record_path.empty())
    write_record(record_path, "verify", flags.config(), metrics, {}, timer.seconds());
  return 0;
}

// ----------------------------------------------------------------- reproduce

int run_reproduce(const std::vector<std::string>& args) {
  CLI::App app{"run the built-in reference tables and export the curves"};
  int table = 1;
  std::string out_dir = "runs", config_path;
  bool do_refine = false;
  std::size_t n = 4096;
  double tol = 1e-10;
  app.add_option("--table", table, "reference table: 1 | 2 | 3 | 4")->required();
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--config", config_path, "JSON config (flags win)");
  app.add_flag("--refine", do_refine, "refine closed-table rows to the stop condition");
  app.add_option("--n", n, "output grid steps");
  app.add_option("--tol", tol, "integrator tolerance");
  if (auto code = try_parse(app, args)) return *code;

  const json cfg = load_config(config_path);
  apply_config(cfg, "out_dir", app.get_option("--out-dir"), out_dir);
  apply_config(cfg, "n", app.get_option("--n"), n);
  apply_config(cfg, "tol", app.get_option("--tol"), tol);

  Stopwatch timer;
  ReproduceOptions options;
  options.refine_rows = do_refine;
  options.export_curves = true;
  options.solve.tol = tol;
  options.solve.samples = n;

  const TableReport report = reproduce_table(table, options);

  fs::create_directories(out_dir);
  std::vector<std::string> outputs;
  json rows = json::array();
  for (const auto& row : report.rows) {
    const fs::path csv = fs::path(out_dir) / (row.row.label + ".csv");
    if (row.curve) {
      write_curve_csv(*row.curve, csv);
      outputs.push_back(csv.string());
    }
    json entry{{"label", row.row.label},
               {"params", row.row.params},
               {"length", row.row.length},
               {"termination", termination_name(row.termination)},
               {"defect", std::isfinite(row.defect) ? json(row.defect) : json("inf")},
               {"min_abs_kappa", row.min_abs_kappa}};
    if (row.row.model == ModelKind::Quadratic) entry["conservation"] = row.conservation;
    if (row.refined) {
      entry["refined_defect"] = row.refined->defect;
      entry["refined_params"] = row.refined->params;
      entry["refined_converged"] = row.refined->converged;
    }
    rows.push_back(entry);
    std::printf("%-14s termination=%s defect=%.6g\n", row.row.label.c_str(),
                termination_name(row.termination), row.defect);
  }

  json resolved{{"table", table}, {"out_dir", out_dir}, {"n", n},
                {"tol", tol},     {"refine", do_refine}};
  const fs::path record = fs::path(out_dir) / ("reproduce_table" + std::to_string(table) + ".json");
  write_record(record.string(), "reproduce", resolved, json{{"rows", rows}}, outputs,
               timer.seconds());
  std::printf("record written to %s\n", record.string().c_str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  if (args.empty()) {
    std::fprintf(stderr,
                 "usage: elastica <integrate|energy|solve|search|refine|minimize|verify|reproduce> "
                 "[options]\n");
    return 2;
  }
  const std::string command = args[0];
  const std::vector<std::string> rest(args.begin() + 1, args.end());

  try {
    if (command == "integrate") return run_integrate(rest);
    if (command == "energy") return run_energy(rest);
    if (command == "solve") return run_solve(rest);
    if (command == "search") return run_search(rest);
    if (command == "refine") return run_refine(rest);
    if (command == "minimize") return run_minimize(rest);
    if (command == "verify") return run_verify(rest);
    if (command == "reproduce") return run_reproduce(rest);
    if (command == "--version" || command == "version") {
      std::printf("elastica %s\n", kVersion);
      return 0;
    }
    std::fprintf(stderr, "error: unknown command '%s'\n", command.c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace elastica::cli

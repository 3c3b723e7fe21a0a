// Closed-curve search over ODE constants: the closure objective, seeded
// random search, Nelder-Mead refinement, and the built-in reference tables.
#ifndef ELASTICA_SHOOTING_HPP
#define ELASTICA_SHOOTING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elastica/critical.hpp"
#include "elastica/frames.hpp"

namespace elastica {

/// Parameter order per model:
///   planar    (c1, kappa0, kappa1)
///   space     (c1, c2, kappa0, kappa1)
///   quadratic (c, kappa0, kappa1, tau0, tau1, tau2)
std::size_t model_parameter_count(ModelKind model);
std::vector<std::string> model_parameter_names(ModelKind model);

struct ClosureEvaluation {
  double defect = 0.0;  // |r(L)| + |t(L) - (1,0,0)|; +inf when not completed
  double position_gap = 0.0;
  double tangent_gap = 0.0;
  Termination termination = Termination::Completed;
  double stop_s = 0.0;
};

/// Solves the model from the given constants, integrating the frame and the
/// position alongside the curvature state (curve clamped at the origin with
/// the canonical frame), and measures the closure defect at s = L.
ClosureEvaluation closure_objective(ModelKind model, const std::vector<double>& params,
                                    double length, const SolveOptions& options = {});

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchSpace {
  ModelKind model = ModelKind::Planar;
  std::vector<ParamRange> ranges;  // one per model parameter, canonical order
  std::vector<double> lengths;    // cycled over trials
  double threshold = 1e-6;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
};

struct SearchRecord {
  std::size_t trial = 0;
  std::vector<double> params;
  double length = 0.0;
  double defect = 0.0;
  Termination termination = Termination::Completed;
  bool accepted = false;
};

/// Uniform sampling per range, one length per trial cycling the candidate
/// list. Fully deterministic given the seed: trial i draws from an
/// independent stream keyed on (seed, i), so parallel and serial runs agree.
/// Records are returned ordered by ascending defect, ties broken
/// lexicographically by the parameter tuple.
std::vector<SearchRecord> random_search(const SearchSpace& space,
                                        const SolveOptions& options = {},
                                        unsigned threads = 0);

struct RefineOptions {
  double threshold = 1e-6;
  std::size_t max_iterations = 2000;
  double simplex_scale = 0.05;  // relative initial simplex displacement
  SolveOptions solve;
};

struct RefineResult {
  std::vector<double> params;
  double defect = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead on the parameter vector minimizing the closure defect with the
/// length fixed. Rejects starts whose defect is not finite.
RefineResult refine(ModelKind model, const std::vector<double>& start, double length,
                    const RefineOptions& options = {});

/// A reference parameter set reproduced by `reproduce_table`.
struct ReferenceRow {
  std::string label;
  ModelKind model = ModelKind::Planar;
  std::vector<double> params;
  double length = 0.0;
};

/// Built-in tables:
///   1 closed planar elasticae (circumference, lemniscate)
///   2 free planar elasticae (six open shapes)
///   3 closed space elasticae
///   4 critical curves of the curvature-torsion quadratic energy
const std::vector<ReferenceRow>& reference_table(int table);

struct TableRowResult {
  ReferenceRow row;
  Termination termination = Termination::Completed;
  double defect = 0.0;        // closure defect (tables 1 and 3)
  double min_abs_kappa = 0.0;
  double conservation = 0.0;  // quadratic conservation monitor (table 4)
  std::optional<RefineResult> refined;
  std::optional<FramedCurve> curve;
};

struct TableReport {
  int table = 0;
  std::vector<TableRowResult> rows;
};

struct ReproduceOptions {
  bool refine_rows = false;    // tables 1 and 3 only
  bool export_curves = false;  // attach reconstructed curves to the report
  SolveOptions solve;
  RefineOptions refine;
};

TableReport reproduce_table(int table, const ReproduceOptions& options = {});

}  // namespace elastica

#endif

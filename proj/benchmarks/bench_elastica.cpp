#include <benchmark/benchmark.h>

#include <numbers>

#include "elastica/energy.hpp"
#include "elastica/frames.hpp"
#include "elastica/shooting.hpp"

using namespace elastica;
using std::numbers::pi;

static void BM_IntegrateFrame(benchmark::State& state) {
  const auto profile =
      CurvatureTorsionProfile::constant(1.0, 0.25, 2.0 * pi, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto curve = integrate_frame(profile, Frame::identity(), Vec3::Zero());
    benchmark::DoNotOptimize(curve.positions.back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegrateFrame)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_PlanarSolve(benchmark::State& state) {
  const ElasticaParams params{1.00824, 0.0, 1.01227, 0.0003, 2.0 * pi};
  SolveOptions options;
  options.tol = 1e-10;
  for (auto _ : state) {
    auto solution = solve_planar_elastica(params, options);
    benchmark::DoNotOptimize(solution.kappa.back());
  }
}
BENCHMARK(BM_PlanarSolve);

static void BM_ClosureObjectiveSpace(benchmark::State& state) {
  const std::vector<double> params{1.25316, 3.92702, 1.58313, 0.528316};
  SolveOptions options;
  options.tol = 1e-8;
  for (auto _ : state) {
    auto eval = closure_objective(ModelKind::Space, params, 16.0 * pi, options);
    benchmark::DoNotOptimize(eval.defect);
  }
}
BENCHMARK(BM_ClosureObjectiveSpace);

static void BM_EnergyQuadrature(benchmark::State& state) {
  const auto profile = CurvatureTorsionProfile::constant(1.0, 0.5, 2.0 * pi, 4096);
  const auto density = EnergyDensity::sadowsky();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_energy(density, profile));
  }
}
BENCHMARK(BM_EnergyQuadrature);

BENCHMARK_MAIN();

#include "elastica/energy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "elastica/random.hpp"

namespace elastica {

double evaluate_energy(const EnergyDensity& density, const CurvatureTorsionProfile& profile) {
  profile.validate();
  const std::size_t n = profile.node_count();
  const double h = profile.node_spacing();

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = density.evaluate(profile.node_s(i), profile.kappa[i], profile.tau[i]).f;

  const std::size_t intervals = n - 1;
  const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 1;
  double sum = 0.0;
  if (simpson_end >= 2) {
    double acc = values[0] + values[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    sum += acc * h / 3.0;
  }
  if (simpson_end != intervals) sum += 0.5 * h * (values[intervals - 1] + values[intervals]);
  return sum;
}

namespace {

void record_violation(ProbeViolation& v, double amount, double a, double b) {
  ++v.count;
  if (amount > v.worst) {
    v.worst = amount;
    v.a = a;
    v.b = b;
  }
}

}  // namespace

DensityProbeReport probe_density(const EnergyDensity& density, const ProbeOptions& options) {
  if (options.grid_a < 3 || options.grid_b < 3)
    throw std::invalid_argument("probe_density: grid must be at least 3 per axis");
  if (!(std::isfinite(options.box.a_min) && std::isfinite(options.box.a_max) &&
        std::isfinite(options.box.b_min) && std::isfinite(options.box.b_max)))
    throw std::invalid_argument("probe_density: box must be finite");

  DensityProbeReport report;
  report.coercivity_declared = density.coercivity.has_value();

  const double p = density.p;
  const double c = density.growth_c;

  auto sample_a = [&](std::size_t i) {
    return options.box.a_min + (options.box.a_max - options.box.a_min) *
                                   static_cast<double>(i) / static_cast<double>(options.grid_a - 1);
  };
  auto sample_b = [&](std::size_t j) {
    return options.box.b_min + (options.box.b_max - options.box.b_min) *
                                   static_cast<double>(j) / static_cast<double>(options.grid_b - 1);
  };

  for (std::size_t i = 0; i < options.grid_a; ++i) {
    const double a = sample_a(i);
    for (std::size_t j = 0; j < options.grid_b; ++j) {
      const double b = sample_b(j);
      const DensityValue v = density.evaluate(0.0, a, b);

      if (density.coercivity) {
        const double bound = density.coercivity->c1 * std::pow(std::abs(a), p) +
                             density.coercivity->c2 * std::pow(std::abs(b), p) +
                             density.coercivity->c3;
        const double slack = options.slack * std::max(1.0, std::abs(bound));
        if (v.f < bound - slack) record_violation(report.coercivity, bound - v.f, a, b);
      }

      const double upper = c * (1.0 + std::pow(std::abs(a), p) + std::pow(std::abs(b), p));
      if (v.f > upper + options.slack * std::max(1.0, upper))
        record_violation(report.upper_growth, v.f - upper, a, b);

      const double partial_bound =
          c * (1.0 + std::pow(std::abs(a), p - 1.0) + std::pow(std::abs(b), p - 1.0));
      const double partial_mag = std::max(std::abs(v.fa), std::abs(v.fb));
      if (partial_mag > partial_bound + options.slack * std::max(1.0, partial_bound))
        record_violation(report.partial_growth, partial_mag - partial_bound, a, b);

      // Central finite differences against the closed-form partials, with the
      // deviation scaled by the local gradient magnitude (unit floor).
      const double da = options.fd_step * std::max(1.0, std::abs(a));
      const double db = options.fd_step * std::max(1.0, std::abs(b));
      const double fd_a =
          (density.evaluate(0.0, a + da, b).f - density.evaluate(0.0, a - da, b).f) / (2.0 * da);
      const double fd_b =
          (density.evaluate(0.0, a, b + db).f - density.evaluate(0.0, a, b - db).f) / (2.0 * db);
      const double scale = std::max(1.0, std::max(std::abs(v.fa), std::abs(v.fb)));
      const bool at_origin = (a == 0.0 && b == 0.0);
      if (!at_origin) {
        const double dev = std::max(std::abs(fd_a - v.fa), std::abs(fd_b - v.fb)) / scale;
        report.max_partial_deviation = std::max(report.max_partial_deviation, dev);
      }
    }
  }

  SplitMix64 rng(options.seed);
  for (std::size_t k = 0; k < options.convexity_pairs; ++k) {
    const double ax = rng.next_in(options.box.a_min, options.box.a_max);
    const double bx = rng.next_in(options.box.b_min, options.box.b_max);
    const double ay = rng.next_in(options.box.a_min, options.box.a_max);
    const double by = rng.next_in(options.box.b_min, options.box.b_max);
    const double fx = density.evaluate(0.0, ax, bx).f;
    const double fy = density.evaluate(0.0, ay, by).f;
    const double fm = density.evaluate(0.0, 0.5 * (ax + ay), 0.5 * (bx + by)).f;
    const double rhs = 0.5 * (fx + fy);
    const double slack = options.slack * std::max({1.0, std::abs(fx), std::abs(fy)});
    if (fm > rhs + slack)
      record_violation(report.midpoint_convexity, fm - rhs, 0.5 * (ax + ay), 0.5 * (bx + by));
  }

  return report;
}

}  // namespace elastica

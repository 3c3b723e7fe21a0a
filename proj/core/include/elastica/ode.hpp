// Adaptive Dormand-Prince 5(4) integration with cubic-Hermite dense output
// and sign-change event localization.
//
// The accepted-step nodes (s, y, f) are kept so diagnostics can evaluate
// conserved quantities at exact solver states, and so any point of the span
// can be interpolated afterwards.
#ifndef ELASTICA_ODE_HPP
#define ELASTICA_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace elastica {

enum class OdeStatus { Completed, EventStopped, Diverged };

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double max_step = 0.0;    // 0 = unlimited
  double first_step = 0.0;  // 0 = automatic
  std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
struct OdeStepPoint {
  double s = 0.0;
  std::array<double, N> y{};
  std::array<double, N> f{};
};

template <std::size_t N>
struct OdeTrajectory {
  std::vector<OdeStepPoint<N>> nodes;  // accepted steps, nodes.front().s == s0
  OdeStatus status = OdeStatus::Completed;
  double s_end = 0.0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;

  const std::array<double, N>& y_end() const { return nodes.back().y; }

  /// Cubic Hermite interpolation inside the covered span.
  std::array<double, N> eval(double s) const {
    if (nodes.size() < 2 || s <= nodes.front().s) return nodes.front().y;
    if (s >= nodes.back().s) return nodes.back().y;
    auto it = std::upper_bound(nodes.begin(), nodes.end(), s,
                               [](double v, const OdeStepPoint<N>& p) { return v < p.s; });
    const OdeStepPoint<N>& hi = *it;
    const OdeStepPoint<N>& lo = *(it - 1);
    return hermite(lo, hi, s);
  }

  static std::array<double, N> hermite(const OdeStepPoint<N>& lo, const OdeStepPoint<N>& hi,
                                       double s) {
    const double h = hi.s - lo.s;
    const double t = (s - lo.s) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = h00 * lo.y[i] + h * h10 * lo.f[i] + h01 * hi.y[i] + h * h11 * hi.f[i];
    return out;
  }
};

namespace detail {

// Dormand-Prince coefficients (FSAL: stage 7 equals the step derivative).
inline constexpr double kDpC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kDpA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double kDpB[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                                   -2187.0 / 6784, 11.0 / 84, 0.0};
inline constexpr double kDpE[7] = {71.0 / 57600,    0.0,        -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

}  // namespace detail

/// Integrates y' = rhs(s, y) over [s0, s1] (s1 > s0).
///
/// `event` (optional) is a continuous guard: integration stops where it first
/// crosses from positive to non-positive, localized by bisection on the dense
/// interpolant to 1e-12 in s.
///
/// `targets` (optional, ascending) are arclengths the integrator lands on
/// exactly, so those output states are solver states rather than
/// interpolants.
template <std::size_t N, typename Rhs>
OdeTrajectory<N> integrate_ode(Rhs&& rhs, const std::array<double, N>& y0, double s0, double s1,
                               const OdeOptions& options,
                               const std::function<double(double, const std::array<double, N>&)>&
                                   event = nullptr,
                               const std::vector<double>* targets = nullptr) {
  if (!(s1 > s0)) throw std::invalid_argument("integrate_ode: empty span");

  using State = std::array<double, N>;
  OdeTrajectory<N> out;

  auto finite = [](const State& y) {
    for (double v : y)
      if (!std::isfinite(v)) return false;
    return true;
  };

  State y = y0;
  State f0;
  rhs(s0, y, f0);
  if (!finite(f0)) {
    out.nodes.push_back({s0, y, f0});
    out.status = OdeStatus::Diverged;
    out.s_end = s0;
    return out;
  }
  out.nodes.push_back({s0, y, f0});

  const double span = s1 - s0;
  double max_step = options.max_step > 0.0 ? options.max_step : span;

  // Initial step from the scaled magnitudes of y and y' (Hairer's heuristic,
  // shortened).
  double h = options.first_step;
  if (h <= 0.0) {
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = options.abs_tol + options.rel_tol * std::abs(y[i]);
      ynorm = std::max(ynorm, std::abs(y[i]) / sc);
      fnorm = std::max(fnorm, std::abs(f0[i]) / sc);
    }
    h = (fnorm > 1e-10) ? 0.01 * ynorm / fnorm + 1e-6 : 1e-3 * span;
    h = std::min(h, span);
  }
  h = std::min(h, max_step);

  std::array<State, 7> k;
  k[0] = f0;

  double s = s0;
  const double kMinFactor = 0.2, kMaxFactor = 10.0, kSafety = 0.9;

  std::size_t next_target = 0;
  if (targets)
    while (next_target < targets->size() && (*targets)[next_target] <= s0) ++next_target;

  while (s < s1) {
    if (out.steps_accepted + out.steps_rejected >= options.max_steps) {
      out.status = OdeStatus::Diverged;
      out.s_end = s;
      return out;
    }
    h = std::min({h, s1 - s, max_step});
    if (targets && next_target < targets->size()) {
      const double to_target = (*targets)[next_target] - s;
      if (to_target > 1e-13 * std::max(1.0, std::abs(s))) h = std::min(h, to_target);
    }

    // Stages 2..7 (stage 1 carried over from the previous step, FSAL).
    State y_new{}, y_stage{};
    for (std::size_t stage = 1; stage < 7; ++stage) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < stage; ++j) acc += detail::kDpA[stage][j] * k[j][i];
        y_stage[i] = y[i] + h * acc;
      }
      rhs(s + detail::kDpC[stage] * h, y_stage, k[stage]);
    }
    y_new = y_stage;  // stage 7 state is the order-5 solution

    bool bad = !finite(y_new);
    double err = 0.0;
    if (!bad) {
      for (std::size_t i = 0; i < N; ++i) {
        double e = 0.0;
        for (std::size_t stage = 0; stage < 7; ++stage) e += detail::kDpE[stage] * k[stage][i];
        const double sc =
            options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        const double r = h * e / sc;
        err += r * r;
      }
      err = std::sqrt(err / static_cast<double>(N));
      if (!std::isfinite(err)) bad = true;
    }

    if (bad) {
      h *= 0.25;
      ++out.steps_rejected;
      if (h < 1e-14 * std::max(1.0, std::abs(s))) {
        out.status = OdeStatus::Diverged;
        out.s_end = s;
        return out;
      }
      continue;
    }

    if (err <= 1.0) {
      OdeStepPoint<N> node;
      node.s = s + h;
      node.y = y_new;
      node.f = k[6];  // FSAL derivative at the new point
      const OdeStepPoint<N> prev = out.nodes.back();  // copy: push_back may reallocate
      out.nodes.push_back(node);
      ++out.steps_accepted;

      if (event) {
        // Detect a positive -> non-positive crossing at the midpoint or the end.
        const double g_prev = event(prev.s, prev.y);
        double hit = std::numeric_limits<double>::quiet_NaN();
        const double s_mid = prev.s + 0.5 * h;
        const auto y_mid = OdeTrajectory<N>::hermite(prev, node, s_mid);
        if (g_prev > 0.0 && event(s_mid, y_mid) <= 0.0)
          hit = s_mid;
        else if (g_prev > 0.0 && event(node.s, node.y) <= 0.0)
          hit = node.s;
        if (!std::isnan(hit)) {
          double lo = prev.s, hi = hit;
          while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            const auto ym = OdeTrajectory<N>::hermite(prev, node, mid);
            (event(mid, ym) > 0.0 ? lo : hi) = mid;
          }
          const double s_event = hi;
          OdeStepPoint<N> stop;
          stop.s = s_event;
          stop.y = OdeTrajectory<N>::hermite(prev, node, s_event);
          rhs(s_event, stop.y, stop.f);
          out.nodes.back() = stop;
          out.status = OdeStatus::EventStopped;
          out.s_end = s_event;
          return out;
        }
      }

      y = y_new;
      s = node.s;
      k[0] = k[6];
      if (targets)
        while (next_target < targets->size() &&
               (*targets)[next_target] <= s + 1e-13 * std::max(1.0, std::abs(s)))
          ++next_target;

      const double factor =
          (err == 0.0) ? kMaxFactor
                       : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
      h *= factor;
    } else {
      ++out.steps_rejected;
      h *= std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, 1.0);
    }
  }

  out.status = OdeStatus::Completed;
  out.s_end = s1;
  return out;
}

}  // namespace elastica

#endif

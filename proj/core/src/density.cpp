#include "elastica/density.hpp"

#include <cmath>

namespace elastica {

namespace {

void check_finite(double s, double a, double b) {
  if (!std::isfinite(s) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("density: non-finite input");
}

// Corrected Sadowsky density:
//   f(a,b) = (a^2+b^2)^2 / a^2   if |a| > |b|,
//   f(a,b) = 4 b^2               if |a| <= |b|.
// The branches are C^1-matched on the seam |a| = |b| > 0; at the origin both
// branch limits give f = 0 with zero gradient, which is the defined value.
DensityJet sadowsky_jet(double a, double b) {
  DensityJet j;
  if (a == 0.0 && b == 0.0) return j;
  if (std::abs(a) > std::abs(b)) {
    // (a^2+b^2)^2/a^2 expanded as a^2 + 2 b^2 + b^4/a^2.
    const double a2 = a * a, b2 = b * b, b3 = b2 * b, b4 = b2 * b2;
    const double ia = 1.0 / a, ia2 = ia * ia, ia3 = ia2 * ia, ia4 = ia2 * ia2, ia5 = ia4 * ia;
    j.f = a2 + 2.0 * b2 + b4 * ia2;
    j.fa = 2.0 * a - 2.0 * b4 * ia3;
    j.fb = 4.0 * b + 4.0 * b3 * ia2;
    j.faa = 2.0 + 6.0 * b4 * ia4;
    j.fab = -8.0 * b3 * ia3;
    j.fbb = 4.0 + 12.0 * b2 * ia2;
    j.faaa = -24.0 * b4 * ia5;
    j.faab = 24.0 * b3 * ia4;
    j.fabb = -24.0 * b2 * ia3;
    j.fbbb = 24.0 * b * ia2;
  } else {
    j.f = 4.0 * b * b;
    j.fb = 8.0 * b;
    j.fbb = 8.0;
  }
  return j;
}

}  // namespace

DensityValue EnergyDensity::evaluate(double s, double a, double b) const {
  check_finite(s, a, b);
  switch (kind) {
    case DensityKind::Euler:
      return {a * a, 2.0 * a, 0.0};
    case DensityKind::Quadratic:
      return {0.5 * (a * a + b * b), a, b};
    case DensityKind::Sadowsky: {
      const DensityJet j = sadowsky_jet(a, b);
      return {j.f, j.fa, j.fb};
    }
    case DensityKind::LangerSinger:
      return {l1 + l2 * b + 0.5 * l3 * a * a, l3 * a, l2};
    case DensityKind::Custom:
      if (!custom_value) throw std::logic_error("custom density without value function");
      return custom_value(s, a, b);
  }
  throw std::logic_error("unreachable density kind");
}

DensityJet EnergyDensity::jet(double s, double a, double b) const {
  check_finite(s, a, b);
  DensityJet j;
  switch (kind) {
    case DensityKind::Euler:
      j.f = a * a;
      j.fa = 2.0 * a;
      j.faa = 2.0;
      return j;
    case DensityKind::Quadratic:
      j.f = 0.5 * (a * a + b * b);
      j.fa = a;
      j.fb = b;
      j.faa = 1.0;
      j.fbb = 1.0;
      return j;
    case DensityKind::Sadowsky:
      return sadowsky_jet(a, b);
    case DensityKind::LangerSinger:
      j.f = l1 + l2 * b + 0.5 * l3 * a * a;
      j.fa = l3 * a;
      j.fb = l2;
      j.faa = l3;
      return j;
    case DensityKind::Custom:
      if (!custom_jet)
        throw std::invalid_argument("custom density '" + name + "' provides no derivative jet");
      return custom_jet(s, a, b);
  }
  throw std::logic_error("unreachable density kind");
}

EnergyDensity EnergyDensity::euler() {
  EnergyDensity d;
  d.kind = DensityKind::Euler;
  d.name = "euler";
  d.coercivity = CoercivityConstants{1.0, 1.0, 0.0};  // probes report the b-direction failure
  d.growth_c = 2.0;
  return d;
}

EnergyDensity EnergyDensity::quadratic() {
  EnergyDensity d;
  d.kind = DensityKind::Quadratic;
  d.name = "quadratic";
  d.coercivity = CoercivityConstants{0.5, 0.5, 0.0};
  d.growth_c = 1.0;
  return d;
}

EnergyDensity EnergyDensity::sadowsky() {
  EnergyDensity d;
  d.kind = DensityKind::Sadowsky;
  d.name = "sadowsky";
  d.coercivity = CoercivityConstants{1.0, 2.0, 0.0};  // f >= a^2 + 2 b^2
  d.growth_c = 8.0;
  return d;
}

EnergyDensity EnergyDensity::langer_singer(double l1, double l2, double l3) {
  EnergyDensity d;
  d.kind = DensityKind::LangerSinger;
  d.name = "langer_singer";
  d.l1 = l1;
  d.l2 = l2;
  d.l3 = l3;
  d.coercivity = std::nullopt;  // linear torsion term: no coercive lower bound
  d.growth_c = std::abs(l1) + std::abs(l2) + std::abs(l3);
  return d;
}

EnergyDensity EnergyDensity::custom(std::string name,
                                    std::function<DensityValue(double, double, double)> value,
                                    double p, std::optional<CoercivityConstants> coercivity,
                                    double growth_c) {
  EnergyDensity d;
  d.kind = DensityKind::Custom;
  d.name = std::move(name);
  d.custom_value = std::move(value);
  d.p = p;
  d.coercivity = coercivity;
  d.growth_c = growth_c;
  return d;
}

EnergyDensity EnergyDensity::from_name(const std::string& name) {
  if (name == "euler") return euler();
  if (name == "quadratic") return quadratic();
  if (name == "sadowsky") return sadowsky();
  if (name == "langer_singer") return langer_singer(1.0, 1.0, 1.0);
  throw std::invalid_argument("unknown density: " + name);
}

}  // namespace elastica

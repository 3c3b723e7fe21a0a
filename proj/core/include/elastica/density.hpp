// Catalog of energy densities f(s, a, b) on (curvature, torsion) pairs.
//
// Catalog entries are autonomous (no explicit s-dependence); the s argument
// is kept in the evaluation signature for future custom densities. Each entry
// carries closed-form partials, declared growth/coercivity constants and, for
// the smooth kinds, partial derivatives through third order.
#ifndef ELASTICA_DENSITY_HPP
#define ELASTICA_DENSITY_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace elastica {

enum class DensityKind { Euler, Quadratic, Sadowsky, LangerSinger, Custom };

struct DensityValue {
  double f = 0.0;
  double fa = 0.0;
  double fb = 0.0;
};

/// Partial derivatives through third order at a point.
struct DensityJet {
  double f = 0.0;
  double fa = 0.0, fb = 0.0;
  double faa = 0.0, fab = 0.0, fbb = 0.0;
  double faaa = 0.0, faab = 0.0, fabb = 0.0, fbbb = 0.0;
};

/// f(s,a,b) >= c1|a|^p + c2|b|^p + c3 with c1, c2 > 0.
struct CoercivityConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

struct EnergyDensity {
  DensityKind kind = DensityKind::Euler;
  std::string name = "euler";
  double p = 2.0;  // growth exponent, > 1
  std::optional<CoercivityConstants> coercivity;
  double growth_c = 1.0;  // upper-growth constant of f, f_a, f_b

  // Langer-Singer parameters: f = l1 + l2*b + l3*a^2/2.
  double l1 = 0.0, l2 = 0.0, l3 = 0.0;

  // Custom densities supply at least values and first partials; the jet is
  // optional and required only by the critical-point diagnostics.
  std::function<DensityValue(double s, double a, double b)> custom_value;
  std::function<DensityJet(double s, double a, double b)> custom_jet;

  DensityValue evaluate(double s, double a, double b) const;
  DensityJet jet(double s, double a, double b) const;

  static EnergyDensity euler();
  static EnergyDensity quadratic();
  static EnergyDensity sadowsky();
  static EnergyDensity langer_singer(double l1, double l2, double l3);
  static EnergyDensity custom(std::string name,
                              std::function<DensityValue(double, double, double)> value,
                              double p, std::optional<CoercivityConstants> coercivity,
                              double growth_c);

  /// Parse a catalog name ("euler", "quadratic", "sadowsky", "langer_singer").
  static EnergyDensity from_name(const std::string& name);
};

/// Value and both partials of the density at (s, a, b).
inline DensityValue evaluate_density(const EnergyDensity& density, double s, double a, double b) {
  return density.evaluate(s, a, b);
}

}  // namespace elastica

#endif

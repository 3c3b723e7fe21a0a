// Basic 3D geometry used throughout: orthonormal frames and the exact
// rotation/displacement maps of a segment with constant curvature and torsion.
#ifndef ELASTICA_GEOMETRY_HPP
#define ELASTICA_GEOMETRY_HPP

#include <Eigen/Dense>

namespace elastica {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Orthonormal moving frame (t|n|b), positively oriented.
struct Frame {
  Vec3 t = Vec3::UnitX();
  Vec3 n = Vec3::UnitY();
  Vec3 b = Vec3::UnitZ();

  /// Columns (t|n|b) as a rotation matrix.
  Mat3 matrix() const {
    Mat3 m;
    m.col(0) = t;
    m.col(1) = n;
    m.col(2) = b;
    return m;
  }

  static Frame from_matrix(const Mat3& m) { return Frame{m.col(0), m.col(1), m.col(2)}; }

  /// Canonical start frame: t = e1, n = e2, b = e3.
  static Frame identity() { return Frame{}; }

  /// Max violation of unit length, orthogonality and det = +1.
  double orthonormality_defect() const {
    const Mat3 m = matrix();
    const double gram = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
    const double det = std::abs(m.determinant() - 1.0);
    return std::max(gram, det);
  }
};

inline Mat3 skew(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

/// exp(h * skew(w)) by the Rodrigues formula, series branch near |w|h = 0.
inline Mat3 rotation_exp(const Vec3& w, double h) {
  const double speed = w.norm();
  const double phi = speed * h;
  const Mat3 k = skew(w);
  double a1, a2;  // exp = I + a1*K + a2*K^2
  if (phi < 1e-4) {
    const double p2 = phi * phi;
    a1 = h * (1.0 - p2 / 6.0 * (1.0 - p2 / 20.0));
    a2 = 0.5 * h * h * (1.0 - p2 / 12.0 * (1.0 - p2 / 30.0));
  } else {
    a1 = std::sin(phi) / speed;
    a2 = (1.0 - std::cos(phi)) / (speed * speed);
  }
  return Mat3::Identity() + a1 * k + a2 * (k * k);
}

/// Integral of exp(u * skew(w)) over u in [0, h]. Maps the body tangent e1 to
/// the exact displacement of a constant curvature/torsion (helix) segment.
inline Mat3 rotation_exp_integral(const Vec3& w, double h) {
  const double speed = w.norm();
  const double phi = speed * h;
  const Mat3 k = skew(w);
  double b1, b2;  // V = h*I + b1*K + b2*K^2
  if (phi < 1e-4) {
    const double p2 = phi * phi;
    b1 = 0.5 * h * h * (1.0 - p2 / 12.0 * (1.0 - p2 / 30.0));
    b2 = h * h * h / 6.0 * (1.0 - p2 / 20.0 * (1.0 - p2 / 42.0));
  } else {
    b1 = (1.0 - std::cos(phi)) / (speed * speed);
    b2 = (h - std::sin(phi) / speed) / (speed * speed);
  }
  return h * Mat3::Identity() + b1 * k + b2 * (k * k);
}

}  // namespace elastica

#endif

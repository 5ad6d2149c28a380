#ifndef ATTSMC_SO3_HPP
#define ATTSMC_SO3_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace attsmc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Frobenius tolerance below which a matrix counts as a valid rotation.
inline constexpr double kRotationTol = 1e-9;

/// A 3x3 orthogonal matrix with unit determinant.
///
/// Construction goes through from_matrix() (validates) or project()
/// (repairs via the polar decomposition). Products of rotations stay
/// rotations, so operator* skips re-validation.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation from_matrix(const Mat3& m);

  /// Nearest rotation in Frobenius norm (orthogonal polar factor).
  /// Throws std::domain_error on singular or reflective input.
  static Rotation project(const Mat3& m);

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  double trace() const { return m_.trace(); }

  Rotation transpose() const { return Rotation(Mat3(m_.transpose()), 0); }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_, 0); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  Rotation(const Mat3& m, int) : m_(m) {}
  Mat3 m_;
};

/// Axis-angle pair with angle canonicalized to [0, pi]; the sign of a
/// larger angle is folded into the axis.
struct AxisAngle {
  Vec3 axis;
  double angle;

  AxisAngle(const Vec3& axis_in, double angle_in);
};

/// Unit quaternion (q0, qv), scalar part first.
struct UnitQuaternion {
  double q0;
  Vec3 qv;

  UnitQuaternion(double q0_in, const Vec3& qv_in);
  double norm() const { return std::sqrt(q0 * q0 + qv.squaredNorm()); }
  UnitQuaternion negated() const { return UnitQuaternion(-q0, -qv); }
};

// so(3) isomorphism: v -> v^x and back.
Mat3 hat(const Vec3& v);
Vec3 vee(const Mat3& X);  // throws std::domain_error if X is not skew

// Antisymmetric / symmetric projectors.
Mat3 pa(const Mat3& A);
Mat3 ps(const Mat3& A);

/// Trace inner product tr(A^T B).
double inner(const Mat3& A, const Mat3& B);

Rotation rodrigues(const AxisAngle& aa);
AxisAngle log_so3(const Rotation& R);

Rotation quat_to_rot(const UnitQuaternion& q);
UnitQuaternion rot_to_quat(const Rotation& R);

Rotation project_to_so3(const Mat3& A);

}  // namespace attsmc

#endif

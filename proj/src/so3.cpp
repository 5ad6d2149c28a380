#include "attsmc/so3.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace attsmc {

namespace {

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }

}  // namespace

Rotation Rotation::from_matrix(const Mat3& m) {
  const double ortho = (m * m.transpose() - Mat3::Identity()).norm();
  const double det = m.determinant();
  if (ortho > kRotationTol || std::abs(det - 1.0) > kRotationTol) {
    throw std::domain_error("Rotation::from_matrix: input is not a rotation");
  }
  return Rotation(m, 0);
}

Rotation Rotation::project(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) <= 0.0) {
    throw std::domain_error("Rotation::project: singular input");
  }
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    throw std::domain_error("Rotation::project: reflective input");
  }
  return Rotation(r, 0);
}

AxisAngle::AxisAngle(const Vec3& axis_in, double angle_in)
    : axis(axis_in), angle(angle_in) {
  const double n = axis.norm();
  if (n < 1e-12) {
    throw std::domain_error("AxisAngle: zero axis");
  }
  axis /= n;
  // Fold into [0, pi]: wrap to (-pi, pi], then flip the axis if negative.
  angle = std::remainder(angle, 2.0 * M_PI);
  if (angle < 0.0) {
    angle = -angle;
    axis = -axis;
  }
}

UnitQuaternion::UnitQuaternion(double q0_in, const Vec3& qv_in)
    : q0(q0_in), qv(qv_in) {
  if (std::abs(norm() - 1.0) > 1e-9) {
    throw std::domain_error("UnitQuaternion: norm deviates from 1");
  }
}

Mat3 hat(const Vec3& v) {
  Mat3 X;
  X << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return X;
}

Vec3 vee(const Mat3& X) {
  if ((X + X.transpose()).norm() > 1e-9) {
    throw std::domain_error("vee: input is not skew-symmetric");
  }
  return Vec3(X(2, 1), X(0, 2), X(1, 0));
}

Mat3 pa(const Mat3& A) { return 0.5 * (A - A.transpose()); }
Mat3 ps(const Mat3& A) { return 0.5 * (A + A.transpose()); }

double inner(const Mat3& A, const Mat3& B) {
  return (A.transpose() * B).trace();
}

Rotation rodrigues(const AxisAngle& aa) {
  const Mat3 K = hat(aa.axis);
  Mat3 m = Mat3::Identity() + std::sin(aa.angle) * K +
           (1.0 - std::cos(aa.angle)) * (K * K);
  return Rotation::from_matrix(m);
}

AxisAngle log_so3(const Rotation& R) {
  const Mat3& m = R.matrix();
  const double c = clamp_unit(0.5 * (m.trace() - 1.0));
  const double theta = std::acos(c);

  if (theta < 1e-12) {
    return AxisAngle(Vec3::UnitX(), 0.0);
  }
  if (M_PI - theta > 1e-4) {
    return AxisAngle(vee(pa(m)) / std::sin(theta), theta);
  }
  // Near the half turn sin(theta) degenerates. The symmetric part gives
  // ps(R) = cos(theta) I + (1 - cos(theta)) eta eta^T, which recovers the
  // axis without dividing by sin(theta).
  const Mat3 N = (ps(m) - c * Mat3::Identity()) / (1.0 - c);
  int k = 0;
  N.diagonal().maxCoeff(&k);
  Vec3 eta = N.col(k) / std::sqrt(N(k, k));
  const Vec3 s = vee(pa(m));  // sin(theta) * eta, possibly tiny
  if (s.norm() > 1e-9) {
    if (eta.dot(s) < 0.0) eta = -eta;
  } else {
    // At theta = pi the sign is arbitrary: first nonzero component positive.
    for (int i = 0; i < 3; ++i) {
      if (std::abs(eta(i)) > 1e-9) {
        if (eta(i) < 0.0) eta = -eta;
        break;
      }
    }
  }
  return AxisAngle(eta, theta);
}

Rotation quat_to_rot(const UnitQuaternion& q) {
  const Mat3 Qv = hat(q.qv);
  Mat3 m = Mat3::Identity() + 2.0 * q.q0 * Qv + 2.0 * (Qv * Qv);
  return Rotation::from_matrix(m);
}

UnitQuaternion rot_to_quat(const Rotation& R) {
  const AxisAngle aa = log_so3(R);
  double q0 = std::cos(0.5 * aa.angle);
  Vec3 qv = std::sin(0.5 * aa.angle) * aa.axis;
  if (q0 < 0.0 ||
      (q0 == 0.0 && [&qv] {
        for (int i = 0; i < 3; ++i) {
          if (qv(i) != 0.0) return qv(i) < 0.0;
        }
        return false;
      }())) {
    q0 = -q0;
    qv = -qv;
  }
  const double n = std::sqrt(q0 * q0 + qv.squaredNorm());
  return UnitQuaternion(q0 / n, qv / n);
}

Rotation project_to_so3(const Mat3& A) {
  if (A.determinant() <= 0.0) {
    throw std::domain_error("project_to_so3: determinant must be positive");
  }
  return Rotation::project(A);
}

}  // namespace attsmc

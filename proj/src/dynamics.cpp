#include "attsmc/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace attsmc {

Inertia::Inertia(const Mat3& J) : J_(J) {
  if ((J - J.transpose()).norm() > 1e-12) {
    throw std::invalid_argument("Inertia: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(J);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("Inertia: matrix must be positive definite");
  }
  lambda_max_ = es.eigenvalues().maxCoeff();
  Jinv_ = J.inverse();
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * M_PI);
  if (t < 0.0) t += 2.0 * M_PI;
  return t;
}

void Reference::validate(double t_end) const {
  const double h = 1e-6;
  const int samples = 17;
  for (int i = 0; i < samples; ++i) {
    const double t = h + (t_end - 2.0 * h) * i / (samples - 1);
    const Vec3 fd = (w_d(t + h) - w_d(t - h)) / (2.0 * h);
    if ((fd - dw_d(t)).norm() > 1e-4) {
      throw std::invalid_argument(
          "Reference: dw_d inconsistent with central difference of w_d");
    }
  }
}

std::pair<Mat3, Vec3> body_deriv(const BodyState& s, const Inertia& J,
                                 const Vec3& u, const Vec3& d) {
  const Vec3 wdot = J.inverse() * ((J.matrix() * s.w).cross(s.w) + u + d);
  return {s.R.matrix() * hat(s.w), wdot};
}

ErrorState error_state(const BodyState& s, const Rotation& ref_R,
                       const Vec3& ref_w) {
  const Rotation R_e = ref_R.transpose() * s.R;
  return ErrorState{R_e, s.w - R_e.matrix().transpose() * ref_w};
}

std::pair<Mat3, Vec3> error_deriv(const ErrorState& e, const Vec3& w,
                                  const Inertia& J, const Vec3& v,
                                  const Vec3& d) {
  const Vec3 wedot = J.inverse() * ((J.matrix() * w).cross(w) + v + d);
  return {e.R_e.matrix() * hat(e.w_e), wedot};
}

Vec3 feedforward(const ErrorState& e, const Vec3& ref_w, const Vec3& ref_dw,
                 const Inertia& J, const Vec3& v) {
  const Mat3& Re = e.R_e.matrix();
  const Vec3 cross_term = (Re * e.w_e).cross(ref_w) - ref_dw;
  return -J.matrix() * (Re.transpose() * cross_term) + v;
}

Mat3 reduced_deriv(const Rotation& R_e) {
  return -R_e.matrix() * pa(R_e.matrix());
}

QuatDeriv quat_deriv(const QuatState& s, const Inertia& J, const Vec3& u,
                     const Vec3& d) {
  QuatDeriv out;
  out.q0_dot = -0.5 * s.q.qv.dot(s.w);
  out.qv_dot = 0.5 * (s.q.q0 * s.w + s.q.qv.cross(s.w));
  out.w_dot = J.inverse() * ((J.matrix() * s.w).cross(s.w) + u + d);
  return out;
}

std::pair<double, double> cylinder_deriv(const CylinderState& s, double u) {
  return {s.omega, u};
}

ReducedEquilibrium classify_reduced_equilibrium(const Rotation& R_e,
                                                double tol) {
  if ((R_e.matrix() - Mat3::Identity()).norm() <= tol) {
    return EqIdentity{};
  }
  if (R_e.trace() <= -1.0 + tol) {
    return EqHalfTurn{log_so3(R_e).axis};
  }
  return EqNone{};
}

}  // namespace attsmc

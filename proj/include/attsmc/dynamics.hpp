#ifndef ATTSMC_DYNAMICS_HPP
#define ATTSMC_DYNAMICS_HPP

#include <functional>
#include <utility>
#include <variant>

#include "attsmc/lie_group.hpp"
#include "attsmc/so3.hpp"

namespace attsmc {

/// Inertia matrix, validated symmetric positive definite. Caches the
/// inverse, the spectral norm and the largest eigenvalue.
class Inertia {
 public:
  explicit Inertia(const Mat3& J);

  const Mat3& matrix() const { return J_; }
  const Mat3& inverse() const { return Jinv_; }
  double spectral_norm() const { return lambda_max_; }  // = lambda_max for SPD
  double lambda_max() const { return lambda_max_; }

 private:
  Mat3 J_;
  Mat3 Jinv_;
  double lambda_max_;
};

struct BodyState {
  Rotation R;
  Vec3 w = Vec3::Zero();
};

struct ErrorState {
  Rotation R_e;
  Vec3 w_e = Vec3::Zero();
};

struct QuatState {
  UnitQuaternion q{1.0, Vec3::Zero()};
  Vec3 w = Vec3::Zero();
};

/// Single-axis plant on the cylinder S^1 x R; theta kept in [0, 2pi).
struct CylinderState {
  double theta = 0.0;
  double omega = 0.0;
};

double wrap_angle(double theta);  // into [0, 2pi)

/// Desired trajectory: closed-form w_d(t) and its derivative, plus the
/// initial desired attitude. R_d(t) is co-integrated by the sim engine.
struct Reference {
  std::function<Vec3(double)> w_d;
  std::function<Vec3(double)> dw_d;
  Rotation R_d0;

  /// Checks that dw_d is consistent with a central difference of w_d on
  /// sample points; throws std::invalid_argument on mismatch > 1e-4.
  void validate(double t_end) const;
};

/// Rigid-body dynamics: Rdot = R w^x, J wdot = (Jw) x w + u + d.
std::pair<Mat3, Vec3> body_deriv(const BodyState& s, const Inertia& J,
                                 const Vec3& u, const Vec3& d);

/// Tracking errors R_e = R_d^T R, w_e = w - R_e^T w_d.
ErrorState error_state(const BodyState& s, const Rotation& ref_R,
                       const Vec3& ref_w);

/// Error dynamics: R_e_dot = R_e w_e^x, J w_e_dot = (Jw) x w + v + d.
std::pair<Mat3, Vec3> error_deriv(const ErrorState& e, const Vec3& w,
                                  const Inertia& J, const Vec3& v,
                                  const Vec3& d);

/// Physical torque realizing the error dynamics for a virtual input v:
/// u = -J R_e^T ((R_e w_e)^x w_d - dw_d) + v.
Vec3 feedforward(const ErrorState& e, const Vec3& ref_w, const Vec3& ref_dw,
                 const Inertia& J, const Vec3& v);

/// Reduced-order flow on the sliding subgroup: R_e_dot = -R_e pa(R_e).
Mat3 reduced_deriv(const Rotation& R_e);

/// Quaternion-parametrized plant; returns (q0_dot, qv_dot, w_dot).
struct QuatDeriv {
  double q0_dot;
  Vec3 qv_dot;
  Vec3 w_dot;
};
QuatDeriv quat_deriv(const QuatState& s, const Inertia& J, const Vec3& u,
                     const Vec3& d);

std::pair<double, double> cylinder_deriv(const CylinderState& s, double u);

/// Equilibria of the reduced flow: the identity and the half turns.
struct EqIdentity {};
struct EqHalfTurn {
  Vec3 axis;
};
struct EqNone {};
using ReducedEquilibrium = std::variant<EqIdentity, EqHalfTurn, EqNone>;

ReducedEquilibrium classify_reduced_equilibrium(const Rotation& R_e,
                                                double tol);

}  // namespace attsmc

#endif

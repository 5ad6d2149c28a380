#include "attsmc/lie_group.hpp"

namespace attsmc {

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  const Mat3& R1 = a.R.matrix();
  const Mat3 R2t = b.R.matrix().transpose();
  const Mat3 bracket = R1 * R2t - R2t * R1;
  const Mat3 W = pa(R1 * hat(b.w) + R2t * hat(a.w) - 0.5 * bracket);
  return GroupElement{a.R * b.R, vee(W)};
}

GroupElement group_inv(const GroupElement& a) {
  return GroupElement{a.R.transpose(), -a.w};
}

Vec3 sliding_sigma(const Rotation& R_e, const Vec3& w_e) {
  return w_e + vee(pa(R_e.matrix()));
}

bool on_sliding_surface(const Rotation& R_e, const Vec3& w_e,
                        const SlidingTolerance& tol) {
  return sliding_sigma(R_e, w_e).norm() <= tol.eps_sigma;
}

Vec3 sl_closure_check(const GroupElement& a, const GroupElement& b) {
  if (sliding_sigma(a.R, a.w).norm() > 1e-9 ||
      sliding_sigma(b.R, b.w).norm() > 1e-9) {
    throw std::domain_error("sl_closure_check: inputs must lie on the surface");
  }
  const GroupElement p = group_mul(a, b);
  return sliding_sigma(p.R, p.w);
}

}  // namespace attsmc

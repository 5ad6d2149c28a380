#ifndef ATTSMC_LIE_GROUP_HPP
#define ATTSMC_LIE_GROUP_HPP

#include "attsmc/so3.hpp"

namespace attsmc {

/// Point of the group SO(3) x R^3 carrying the non-direct product below.
struct GroupElement {
  Rotation R;
  Vec3 w = Vec3::Zero();
};

struct SlidingTolerance {
  double eps_sigma = 1e-9;
};

/// Group product: the rotation factors compose by matrix product; the
/// velocity factor is vee(pa(R1 w2^x + R2^T w1^x - 1/2 [R1, R2^T])).
GroupElement group_mul(const GroupElement& a, const GroupElement& b);

/// Inverse (R^T, -w).
GroupElement group_inv(const GroupElement& a);

/// Sliding variable sigma(R_e, w_e) = w_e + vee(pa(R_e)).
Vec3 sliding_sigma(const Rotation& R_e, const Vec3& w_e);

bool on_sliding_surface(const Rotation& R_e, const Vec3& w_e,
                        const SlidingTolerance& tol);

/// For a, b on the sliding surface, returns sigma(a * b); the subgroup
/// closure argument makes this zero, so tests assert on its magnitude.
/// Throws std::domain_error if a or b is off the surface beyond 1e-9.
Vec3 sl_closure_check(const GroupElement& a, const GroupElement& b);

}  // namespace attsmc

#endif

#ifndef ATTSMC_RANDOM_HPP
#define ATTSMC_RANDOM_HPP

#include <random>

#include "attsmc/so3.hpp"

namespace attsmc {

using Rng = std::mt19937_64;

/// Uniform rotation via a normalized Gaussian quaternion.
inline Rotation random_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double q0 = n(rng);
  Vec3 qv(n(rng), n(rng), n(rng));
  const double norm = std::sqrt(q0 * q0 + qv.squaredNorm());
  return quat_to_rot(UnitQuaternion(q0 / norm, qv / norm));
}

inline Vec3 random_vec3(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Vec3(u(rng), u(rng), u(rng));
}

}  // namespace attsmc

#endif

#include "attsmc/lie_group.hpp"

#include <iostream>

#include "attsmc/random.hpp"
#include "doctest.h"

using namespace attsmc;

namespace {

GroupElement random_element(Rng& rng) {
  return GroupElement{random_rotation(rng), random_vec3(rng, -2, 2)};
}

GroupElement random_sl_element(Rng& rng) {
  const Rotation R = random_rotation(rng);
  return GroupElement{R, -vee(pa(R.matrix()))};
}

double element_dist(const GroupElement& a, const GroupElement& b) {
  return std::max((a.R.matrix() - b.R.matrix()).norm(), (a.w - b.w).norm());
}

const GroupElement kIdentity{Rotation::identity(), Vec3::Zero()};

}  // namespace

TEST_CASE("group product examples") {
  Rng rng(23);
  const GroupElement a = random_element(rng);
  CHECK(element_dist(group_mul(kIdentity, a), a) <= 1e-15);
  CHECK(element_dist(group_mul(a, kIdentity), a) <= 1e-15);
  CHECK(element_dist(group_mul(group_inv(a), a), kIdentity) <= 1e-12);
}

TEST_CASE("group inverse examples") {
  CHECK(element_dist(group_inv(kIdentity), kIdentity) == 0.0);
  Rng rng(29);
  const GroupElement a = random_element(rng);
  const GroupElement ai = group_inv(a);
  CHECK((ai.R.matrix() - a.R.matrix().transpose()).norm() == 0.0);
  CHECK(ai.w == -a.w);
  CHECK(element_dist(group_inv(ai), a) == 0.0);
}

TEST_CASE("sigma examples") {
  CHECK(sliding_sigma(Rotation::identity(), Vec3::Zero()) == Vec3::Zero());
  Rng rng(31);
  const Rotation R = random_rotation(rng);
  CHECK(sliding_sigma(R, -vee(pa(R.matrix()))).norm() == 0.0);
  const Rotation Rz = rodrigues(AxisAngle(Vec3(0, 0, 1), M_PI / 2));
  CHECK((sliding_sigma(Rz, Vec3(0, 0, 1)) - Vec3(0, 0, 2)).norm() <= 1e-15);
}

TEST_CASE("sliding surface membership") {
  const SlidingTolerance tol{1e-9};
  CHECK(on_sliding_surface(Rotation::identity(), Vec3::Zero(), tol));
  const Rotation Rz = rodrigues(AxisAngle(Vec3(0, 0, 1), M_PI / 2));
  CHECK(on_sliding_surface(Rz, Vec3(0, 0, -1), tol));
  CHECK_FALSE(on_sliding_surface(Rotation::identity(), Vec3(0, 0, 0.1), tol));
}

TEST_CASE("subgroup closure check") {
  CHECK(sl_closure_check(kIdentity, kIdentity) == Vec3::Zero());
  const GroupElement a{rodrigues(AxisAngle(Vec3(0, 0, 1), M_PI / 2)),
                       Vec3(0, 0, -1)};
  const GroupElement b{rodrigues(AxisAngle(Vec3(1, 0, 0), M_PI / 2)),
                       Vec3(-1, 0, 0)};
  CHECK(sl_closure_check(a, b).norm() <= 1e-8);
  Rng rng(37);
  const GroupElement c = random_sl_element(rng);
  CHECK(sl_closure_check(c, group_inv(c)).norm() <= 1e-8);
  CHECK_THROWS_AS(
      sl_closure_check(GroupElement{Rotation::identity(), Vec3(0, 0, 1)},
                       kIdentity),
      std::domain_error);
}

TEST_CASE("identity and inverse laws, 1000 random elements") {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const GroupElement a = random_element(rng);
    CHECK(element_dist(group_mul(kIdentity, a), a) <= 1e-12);
    CHECK(element_dist(group_mul(a, kIdentity), a) <= 1e-12);
    const GroupElement ai = group_inv(a);
    CHECK(element_dist(group_mul(ai, a), kIdentity) <= 1e-9);
    CHECK(element_dist(group_mul(a, ai), kIdentity) <= 1e-9);
  }
}

TEST_CASE("subgroup closure, 1000 random pairs") {
  Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    const GroupElement a = random_sl_element(rng);
    const GroupElement b = random_sl_element(rng);
    CHECK(sl_closure_check(a, b).norm() <= 1e-8);
    const GroupElement ai = group_inv(a);
    CHECK(sliding_sigma(ai.R, ai.w).norm() <= 1e-12);
  }
}

TEST_CASE("sigma inversion identity") {
  Rng rng(47);
  for (int i = 0; i < 1000; ++i) {
    const GroupElement a = random_element(rng);
    const GroupElement ai = group_inv(a);
    CHECK((sliding_sigma(ai.R, ai.w) + sliding_sigma(a.R, a.w)).norm() <=
          1e-12);
  }
}

TEST_CASE("sigma finite-difference smoothness proxy") {
  Rng rng(53);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const Rotation R = random_rotation(rng);
    const Vec3 we = random_vec3(rng, -2, 2);
    const Vec3 dir = random_vec3(rng, -1, 1).normalized();
    const Rotation Rp =
        R * rodrigues(AxisAngle(dir, h));  // geodesic perturbation
    const Vec3 fd = (sliding_sigma(Rp, we + h * dir) - sliding_sigma(R, we)) / h;
    CHECK(fd.norm() <= 3.0);  // |d sigma| <= |d w_e| + |d vee(pa(R))|
  }
}

TEST_CASE("associativity defect is reported") {
  Rng rng(59);
  double max_defect = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GroupElement a = random_element(rng);
    const GroupElement b = random_element(rng);
    const GroupElement c = random_element(rng);
    max_defect = std::max(max_defect,
                          element_dist(group_mul(group_mul(a, b), c),
                                       group_mul(a, group_mul(b, c))));
  }
  std::cout << "associativity max defect over 1000 triples: " << max_defect
            << "\n";
  CHECK(std::isfinite(max_defect));
}

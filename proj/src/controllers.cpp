#include "attsmc/controllers.hpp"

#include <cmath>
#include <string>

namespace attsmc {

namespace {

// Zero selection at the origin; |x| below 1e-12 counts as zero so that
// floating-point residue (e.g. sin(pi) ~ 1e-16) does not flip the sign.
double sgn(double x) {
  if (x > 1e-12) return 1.0;
  if (x < -1e-12) return -1.0;
  return 0.0;
}

Vec3 unit_law(const Vec3& sigma, double gain, double eps_layer) {
  const double n = sigma.norm();
  if (n <= 1e-15) return Vec3::Zero();
  if (eps_layer > 0.0 && n <= eps_layer) {
    return -gain / eps_layer * sigma;
  }
  return -gain / n * sigma;
}

}  // namespace

SmcConfig::SmcConfig(double delta_in, double d_bar_in, double c_w2_in,
                     double c_we_in, double k0_in, double eps_layer_in,
                     const Inertia& J)
    : delta(delta_in),
      d_bar(d_bar_in),
      c_w2(c_w2_in),
      c_we(c_we_in),
      k0(k0_in),
      eps_layer(eps_layer_in) {
  if (delta <= 0.0) throw std::invalid_argument("SmcConfig: delta must be > 0");
  if (d_bar < 0.0) throw std::invalid_argument("SmcConfig: d_bar must be >= 0");
  if (eps_layer < 0.0) {
    throw std::invalid_argument("SmcConfig: eps_layer must be >= 0");
  }
  if (c_w2 < J.spectral_norm()) {
    throw std::invalid_argument(
        "SmcConfig: gain condition c_w2 >= ||J||_2 violated (c_w2 = " +
        std::to_string(c_w2) + ", ||J||_2 = " +
        std::to_string(J.spectral_norm()) + ")");
  }
  if (c_we < 1.0) {
    throw std::invalid_argument(
        "SmcConfig: gain condition c_we >= 1 violated (c_we = " +
        std::to_string(c_we) + ")");
  }
  if (k0 < d_bar + delta) {
    throw std::invalid_argument(
        "SmcConfig: gain condition k0 >= d_bar + delta violated (k0 = " +
        std::to_string(k0) + ", d_bar + delta = " +
        std::to_string(d_bar + delta) + ")");
  }
}

QuatSmcConfig::QuatSmcConfig(double k_q_in, double eps_layer_in)
    : k_q(k_q_in), eps_layer(eps_layer_in) {
  if (k_q <= 0.0) throw std::invalid_argument("QuatSmcConfig: k_q must be > 0");
  if (eps_layer < 0.0) {
    throw std::invalid_argument("QuatSmcConfig: eps_layer must be >= 0");
  }
}

double gain_k(const Vec3& w, const Vec3& w_e, const SmcConfig& cfg) {
  return cfg.c_w2 * w.squaredNorm() + cfg.c_we * w_e.norm() + cfg.k0;
}

Vec3 smc_so3(const ErrorState& e, const Vec3& w, const SmcConfig& cfg) {
  const Vec3 sigma = sliding_sigma(e.R_e, e.w_e);
  return unit_law(sigma, gain_k(w, e.w_e, cfg), cfg.eps_layer);
}

Vec3 smc_quat(const UnitQuaternion& q, const Vec3& w,
              const QuatSmcConfig& cfg) {
  return unit_law(q.qv + w, cfg.k_q, cfg.eps_layer);
}

double s1_sigma(double theta, double omega, S1Variant variant) {
  switch (variant) {
    case S1Variant::Standard:
      return omega + theta;
    case S1Variant::Wrapped:
      return omega - M_PI + wrap_angle(theta - M_PI);
    case S1Variant::Smooth:
      return omega + M_PI * std::sin(theta);
  }
  return 0.0;  // unreachable
}

double s1_control(double theta, double omega, S1Variant variant) {
  return -(std::abs(omega) + 1.0) * sgn(s1_sigma(theta, omega, variant));
}

LyapunovReadout lyapunov_readout(const ErrorState& e, const Inertia& J) {
  const Vec3 sigma = sliding_sigma(e.R_e, e.w_e);
  return LyapunovReadout{0.5 * (3.0 - e.R_e.trace()),
                         0.5 * sigma.dot(J.matrix() * sigma)};
}

double reach_time_bound(double V_sigma0, const Inertia& J, double delta) {
  if (delta <= 0.0) {
    throw std::invalid_argument("reach_time_bound: delta must be > 0");
  }
  return 2.0 * std::sqrt(J.lambda_max() * V_sigma0) / delta;
}

}  // namespace attsmc

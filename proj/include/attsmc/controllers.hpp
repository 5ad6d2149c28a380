#ifndef ATTSMC_CONTROLLERS_HPP
#define ATTSMC_CONTROLLERS_HPP

#include "attsmc/dynamics.hpp"

namespace attsmc {

/// Gains for the SO(3) sliding-mode reaching law. The constructor checks
/// the gain-dominance conditions against the inertia and the disturbance
/// bound: c_w2 >= ||J||_2, c_we >= 1, k0 >= d_bar + delta.
struct SmcConfig {
  double delta;       // reaching margin, > 0
  double d_bar;       // disturbance bound, >= 0
  double c_w2;        // coefficient on ||w||^2
  double c_we;        // coefficient on ||w_e||
  double k0;          // constant term
  double eps_layer;   // boundary-layer half width, >= 0

  SmcConfig(double delta_in, double d_bar_in, double c_w2_in, double c_we_in,
            double k0_in, double eps_layer_in, const Inertia& J);
};

struct QuatSmcConfig {
  double k_q;
  double eps_layer;

  QuatSmcConfig(double k_q_in, double eps_layer_in);
};

struct LyapunovReadout {
  double V_R;      // (1/2) tr(I - R_e), in [0, 2]
  double V_sigma;  // (1/2) sigma^T J sigma
};

enum class S1Variant { Standard, Wrapped, Smooth };

double gain_k(const Vec3& w, const Vec3& w_e, const SmcConfig& cfg);

/// Reaching law v = -K sigma/||sigma||, linear inside the boundary layer.
Vec3 smc_so3(const ErrorState& e, const Vec3& w, const SmcConfig& cfg);

/// Quaternion baseline: sigma_q = qv + w, u = -k_q sigma_q/||sigma_q||.
Vec3 smc_quat(const UnitQuaternion& q, const Vec3& w, const QuatSmcConfig& cfg);

double s1_sigma(double theta, double omega, S1Variant variant);
double s1_control(double theta, double omega, S1Variant variant);

LyapunovReadout lyapunov_readout(const ErrorState& e, const Inertia& J);

/// Comparison-lemma zero-crossing time 2 sqrt(lambda_max V0) / delta.
double reach_time_bound(double V_sigma0, const Inertia& J, double delta);

}  // namespace attsmc

#endif

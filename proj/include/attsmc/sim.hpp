#ifndef ATTSMC_SIM_HPP
#define ATTSMC_SIM_HPP

#include <optional>
#include <string>
#include <vector>

#include "attsmc/controllers.hpp"
#include "attsmc/dynamics.hpp"

namespace attsmc {

enum class AttitudeUpdate { ExpMap, RK4Project };

struct SimConfig {
  double dt = 1e-4;          // s
  double T = 1.0;            // s
  AttitudeUpdate attitude_update = AttitudeUpdate::ExpMap;
  std::uint64_t seed = 0;
  int record_stride = 100;

  void validate() const;
};

/// Per-channel sinusoid disturbance a_i * trig(nu_i * t). The reported
/// bound d_bar = ||amplitudes|| dominates sup_t ||d(t)||.
struct DisturbanceSpec {
  Vec3 amplitudes = Vec3::Zero();
  Vec3 frequencies = Vec3::Zero();  // rad/s
  enum class Phase { Sin, Cos };
  Phase phases[3] = {Phase::Sin, Phase::Sin, Phase::Sin};

  double bound() const { return amplitudes.norm(); }

  /// The paper scenario d(t) = (sin(5 pi t), cos(7 pi t), sin(9 pi t)).
  static DisturbanceSpec paper();
};

Vec3 eval_disturbance(const DisturbanceSpec& spec, double t);

/// One output row; layout mirrors the CSV columns.
struct TrajectoryRecord {
  double t;
  Mat3 R;          // attitude (SO(3) runs) or quat_to_rot(q) (quaternion runs)
  Vec3 w;
  Vec3 sigma;
  Vec3 u;
  double tr_Re;
  double V_R;
  double V_sigma;
  std::optional<double> q0;  // quaternion runs only
};

struct RunMetrics {
  std::optional<double> reach_time;  // first t with ||sigma|| <= tol held 0.1 s
  double min_tr_Re;
  double final_tr_Re;
  double final_we_norm;
  double max_u_norm;
};

/// Thrown when a simulation produces a non-finite state.
struct NumericalAbort : std::runtime_error {
  std::size_t record_index;
  NumericalAbort(std::size_t idx)
      : std::runtime_error("simulation aborted: non-finite state at record " +
                           std::to_string(idx)),
        record_index(idx) {}
};

/// One attitude step of Rdot = R w^x with constant w over dt.
Rotation step_attitude(const Rotation& R, const Vec3& w, double dt,
                       AttitudeUpdate mode);

struct SimResult {
  std::vector<TrajectoryRecord> records;
  RunMetrics metrics;
};

SimResult simulate_so3_closed_loop(const BodyState& init, const Reference& ref,
                                   const Inertia& J, const SmcConfig& smc,
                                   const DisturbanceSpec& dist,
                                   const SimConfig& sim);

SimResult simulate_quat_closed_loop(const QuatState& init, const Inertia& J,
                                    const QuatSmcConfig& cfg,
                                    const DisturbanceSpec& dist,
                                    const SimConfig& sim);

struct CylinderRecord {
  double t;
  double theta;
  double omega;
  double sigma;
};

std::vector<CylinderRecord> simulate_cylinder(const CylinderState& init,
                                              S1Variant variant,
                                              const SimConfig& sim);

/// CSV serialization with 17 significant digits. Header:
/// t,R11,...,R33,wx,wy,wz,sx,sy,sz,ux,uy,uz,trRe,VR,Vsig[,q0]
std::string records_to_csv(const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> records_from_csv(const std::string& csv);

}  // namespace attsmc

#endif

#ifndef ATTSMC_SCENARIO_HPP
#define ATTSMC_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "attsmc/sim.hpp"

namespace attsmc {

/// Thrown on malformed or inconsistent scenario configs; the message
/// names the offending field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
  UnwindingComparison,
  Tracking,
  Regulation,
  CylinderPortrait,
  PropertySuite,
};

struct ReferenceSpec {
  enum class Profile { Zero, Constant, Sinusoid };
  Profile profile = Profile::Zero;
  Vec3 amplitude = Vec3::Zero();   // rad/s
  Vec3 frequency = Vec3::Zero();   // rad/s
  Vec3 Rd0_axis = Vec3::UnitZ();
  double Rd0_angle = 0.0;

  Reference build() const;
};

struct InitialSpec {
  Vec3 R0_axis = Vec3::UnitZ();
  double R0_angle = 0.0;
  Vec3 omega0 = Vec3::Zero();
  double q0 = 1.0;                 // quaternion runs
  Vec3 qv0 = Vec3::Zero();
};

struct GridSpec {
  int theta_count = 5;
  int omega_count = 5;
  double omega_min = -2.0;
  double omega_max = 2.0;
  S1Variant variant = S1Variant::Smooth;
};

struct SuiteSpec {
  int samples = 1000;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::Tracking;
  Mat3 inertia = Eigen::Vector3d(3.0, 4.0, 5.0).asDiagonal();
  DisturbanceSpec disturbance;
  // SMC gains; stored raw, validated against inertia/d_bar when used.
  double smc_delta = 0.05;
  double smc_d_bar = 0.0;
  double smc_c_w2 = 7.0;
  double smc_c_we = 2.0;
  double smc_k0 = 1.8;
  double smc_eps_layer = 1e-3;
  double quat_k_q = 5.0;
  double quat_eps_layer = 1e-3;
  ReferenceSpec reference;
  InitialSpec initial;
  SimConfig sim;
  GridSpec grid;
  SuiteSpec suite;
  std::string out_prefix = "out";

  SmcConfig make_smc(const Inertia& J) const;
};

Scenario scenario_from_json(const std::string& json_text);
Scenario scenario_from_file(const std::string& path);

struct RunSummary {
  std::string name;
  RunMetrics metrics;
  bool unwinding = false;  // min tr(R_e) dipped below zero
};

struct SuiteResult {
  std::string name;
  int samples;
  double max_residual;
  double tolerance;  // <= 0 means informational only
  bool pass;
};

struct MetricsSummary {
  std::vector<RunSummary> runs;
  std::vector<SuiteResult> suites;
  std::uint64_t seed = 0;

  std::string to_json() const;
  std::string to_table() const;
  bool all_pass() const;
};

MetricsSummary run_unwinding_comparison(const Scenario& cfg);
MetricsSummary run_tracking(const Scenario& cfg);          // also Regulation
MetricsSummary run_cylinder_portrait(const Scenario& cfg);
MetricsSummary run_property_suite(const Scenario& cfg);

/// Dispatch on cfg.kind; writes CSVs under cfg.out_prefix and the summary
/// to <prefix>_summary.json.
MetricsSummary run_scenario(const Scenario& cfg);

void write_file(const std::string& path, const std::string& contents);

}  // namespace attsmc

#endif

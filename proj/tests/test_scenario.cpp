#include "attsmc/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace attsmc;

namespace {

std::string tmp_prefix(const std::string& stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

const char* kMinimalRegulation = R"({
  "kind": "regulation",
  "inertia_kgm2": [3, 4, 5],
  "disturbance": {
    "amplitudes": [1, 1, 1],
    "angular_frequencies_rad_s": [15.707963267948966, 21.991148575128552,
                                  28.274333882308138],
    "phases": ["sin", "cos", "sin"]
  },
  "smc": {"delta": 0.0679, "c_omega2": 7, "c_omega_e": 2, "k0": 1.8,
          "epsilon_layer": 1e-3},
  "initial": {"R0_axis": [0, 0, 1], "R0_angle_rad": 1.5707963267948966},
  "sim": {"dt_s": 1e-3, "T_s": 0.5, "record_stride": 10}
})";

}  // namespace

TEST_CASE("parsing a full scenario") {
  const Scenario s = scenario_from_json(kMinimalRegulation);
  CHECK(s.kind == ScenarioKind::Regulation);
  CHECK(s.inertia(2, 2) == 5.0);
  CHECK(s.smc_d_bar == doctest::Approx(std::sqrt(3.0)));  // defaulted
  CHECK(s.smc_k0 == 1.8);
  CHECK(s.sim.dt == 1e-3);
  CHECK(s.initial.R0_angle == doctest::Approx(M_PI / 2));
  CHECK(s.reference.profile == ReferenceSpec::Profile::Zero);
  CHECK_NOTHROW(s.make_smc(Inertia(s.inertia)));
}

TEST_CASE("config errors name the offending field") {
  CHECK_THROWS_WITH_AS(scenario_from_json("{}"),
                       doctest::Contains("kind"), ConfigError);
  CHECK_THROWS_WITH_AS(scenario_from_json("not json"),
                       doctest::Contains("invalid JSON"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"kind":"tracking","smc":{"delta":0.05}})"),
      doctest::Contains("smc.c_omega2"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"kind":"tracking","initial":{"R0_axis":[1,0]}})"),
      doctest::Contains("initial.R0_axis"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"kind":"tracking","initial":{"q0":[1,0,0]}})"),
      doctest::Contains("initial.q0"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"kind":"cylinder_portrait","grid":{"variant":"spline"}})"),
      doctest::Contains("grid.variant"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"kind":"tracking","sim":{"attitude_update":"euler"}})"),
      doctest::Contains("attitude_update"), ConfigError);
}

TEST_CASE("undersized gains surface an actionable message") {
  Scenario s = scenario_from_json(kMinimalRegulation);
  s.smc_k0 = 1.0;  // below d_bar + delta
  CHECK_THROWS_WITH_AS(s.make_smc(Inertia(s.inertia)),
                       doctest::Contains("k0 >= d_bar + delta"),
                       std::invalid_argument);
}

TEST_CASE("kind mismatch is rejected by each runner") {
  Scenario s = scenario_from_json(kMinimalRegulation);
  CHECK_THROWS_AS(run_unwinding_comparison(s), ConfigError);
  CHECK_THROWS_AS(run_cylinder_portrait(s), ConfigError);
  CHECK_THROWS_AS(run_property_suite(s), ConfigError);
  s.kind = ScenarioKind::CylinderPortrait;
  CHECK_THROWS_AS(run_tracking(s), ConfigError);
}

TEST_CASE("regulation run writes its csv and summary") {
  Scenario s = scenario_from_json(kMinimalRegulation);
  s.out_prefix = tmp_prefix("attsmc_reg_test");
  const MetricsSummary sum = run_scenario(s);
  REQUIRE(sum.runs.size() == 1);
  CHECK(sum.runs[0].name == "regulation");
  CHECK(sum.all_pass());

  std::ifstream csv(s.out_prefix + ".csv");
  REQUIRE(csv.good());
  std::stringstream ss;
  ss << csv.rdbuf();
  const auto records = records_from_csv(ss.str());
  CHECK(records.size() == 51);  // 0.5 s at dt 1e-3, stride 10, plus t=0
  CHECK(records.front().t == 0.0);
  CHECK(records.back().t == doctest::Approx(0.5));

  std::ifstream js(s.out_prefix + "_summary.json");
  REQUIRE(js.good());
  std::stringstream jss;
  jss << js.rdbuf();
  CHECK(jss.str() == sum.to_json());
  CHECK(jss.str().find("final_tr_Re") != std::string::npos);

  std::remove((s.out_prefix + ".csv").c_str());
  std::remove((s.out_prefix + "_summary.json").c_str());
}

TEST_CASE("property suite with zero samples reports nothing") {
  Scenario s;
  s.kind = ScenarioKind::PropertySuite;
  s.suite.samples = 0;
  const MetricsSummary sum = run_property_suite(s);
  CHECK(sum.suites.empty());
  CHECK(sum.all_pass());
}

TEST_CASE("property suite passes on a small sample count") {
  Scenario s;
  s.kind = ScenarioKind::PropertySuite;
  s.suite.samples = 50;
  s.sim.seed = 1;
  s.out_prefix = tmp_prefix("attsmc_suite_test");
  const MetricsSummary sum = run_property_suite(s);
  CHECK(sum.all_pass());
  bool saw_assoc = false;
  for (const auto& r : sum.suites) {
    if (r.name == "associativity-defect") {
      saw_assoc = true;
      CHECK(r.tolerance <= 0.0);  // informational only
    }
  }
  CHECK(saw_assoc);
  const std::string table = sum.to_table();
  CHECK(table.find("group-identity") != std::string::npos);
  std::remove((s.out_prefix + "_summary.json").c_str());
}

TEST_CASE("reference spec builds consistent derivatives") {
  ReferenceSpec spec;
  spec.profile = ReferenceSpec::Profile::Sinusoid;
  spec.amplitude = Vec3(0.3, 0.2, 0.1);
  spec.frequency = Vec3(1.0, 0.7, 1.3);
  const Reference ref = spec.build();
  CHECK_NOTHROW(ref.validate(10.0));
  CHECK((ref.w_d(0.0)).norm() == 0.0);
  CHECK(ref.dw_d(0.0).x() == doctest::Approx(0.3));

  ReferenceSpec c;
  c.profile = ReferenceSpec::Profile::Constant;
  c.amplitude = Vec3(0.1, 0, 0);
  c.Rd0_axis = Vec3(0, 1, 0);
  c.Rd0_angle = 0.5;
  const Reference cref = c.build();
  CHECK(cref.w_d(3.0) == Vec3(0.1, 0, 0));
  CHECK(cref.R_d0.trace() == doctest::Approx(1.0 + 2.0 * std::cos(0.5)));
}

TEST_CASE("scenario_from_file") {
  const std::string path = tmp_prefix("attsmc_cfg_test.json");
  write_file(path, kMinimalRegulation);
  const Scenario s = scenario_from_file(path);
  CHECK(s.kind == ScenarioKind::Regulation);
  std::remove(path.c_str());
  CHECK_THROWS_AS(scenario_from_file(path), ConfigError);
}

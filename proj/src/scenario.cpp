#include "attsmc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "attsmc/random.hpp"
#include "json.hpp"

namespace attsmc {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Vec3 get_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(path + ": expected an array of 3 numbers");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

double get_num(const json& j, const std::string& key, const std::string& path,
               std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key + ": missing required field");
  }
  if (!j[key].is_number()) {
    throw ConfigError(path + "." + key + ": expected a number");
  }
  return j[key].get<double>();
}

S1Variant parse_variant(const std::string& s, const std::string& path) {
  if (s == "standard") return S1Variant::Standard;
  if (s == "wrapped") return S1Variant::Wrapped;
  if (s == "smooth") return S1Variant::Smooth;
  throw ConfigError(path + ": unknown sliding-variable variant '" + s + "'");
}

Rotation axis_angle_rot(const Vec3& axis, double angle) {
  if (angle == 0.0) return Rotation::identity();
  return rodrigues(AxisAngle(axis, angle));
}

}  // namespace

Reference ReferenceSpec::build() const {
  Reference ref;
  ref.R_d0 = axis_angle_rot(Rd0_axis, Rd0_angle);
  switch (profile) {
    case Profile::Zero:
      ref.w_d = [](double) -> Vec3 { return Vec3::Zero(); };
      ref.dw_d = [](double) -> Vec3 { return Vec3::Zero(); };
      break;
    case Profile::Constant: {
      const Vec3 a = amplitude;
      ref.w_d = [a](double) -> Vec3 { return a; };
      ref.dw_d = [](double) -> Vec3 { return Vec3::Zero(); };
      break;
    }
    case Profile::Sinusoid: {
      const Vec3 a = amplitude;
      const Vec3 f = frequency;
      ref.w_d = [a, f](double t) -> Vec3 {
        return Vec3(a.x() * std::sin(f.x() * t), a.y() * std::sin(f.y() * t),
                    a.z() * std::sin(f.z() * t));
      };
      ref.dw_d = [a, f](double t) -> Vec3 {
        return Vec3(a.x() * f.x() * std::cos(f.x() * t),
                    a.y() * f.y() * std::cos(f.y() * t),
                    a.z() * f.z() * std::cos(f.z() * t));
      };
      break;
    }
  }
  return ref;
}

SmcConfig Scenario::make_smc(const Inertia& J) const {
  return SmcConfig(smc_delta, smc_d_bar, smc_c_w2, smc_c_we, smc_k0,
                   smc_eps_layer, J);
}

Scenario scenario_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  Scenario s;
  const std::string kind = j.value("kind", "");
  if (kind == "unwinding_comparison") s.kind = ScenarioKind::UnwindingComparison;
  else if (kind == "tracking") s.kind = ScenarioKind::Tracking;
  else if (kind == "regulation") s.kind = ScenarioKind::Regulation;
  else if (kind == "cylinder_portrait") s.kind = ScenarioKind::CylinderPortrait;
  else if (kind == "property_suite") s.kind = ScenarioKind::PropertySuite;
  else throw ConfigError("kind: unknown or missing scenario kind '" + kind + "'");

  if (j.contains("inertia_kgm2")) {
    const auto& ij = j["inertia_kgm2"];
    if (ij.is_array() && ij.size() == 3 && ij[0].is_array()) {
      for (int r = 0; r < 3; ++r) {
        s.inertia.row(r) = get_vec3(ij[r], "inertia_kgm2").transpose();
      }
    } else {
      s.inertia = get_vec3(ij, "inertia_kgm2").asDiagonal();
    }
  }

  if (j.contains("disturbance")) {
    const auto& dj = j["disturbance"];
    s.disturbance.amplitudes =
        get_vec3(dj.at("amplitudes"), "disturbance.amplitudes");
    s.disturbance.frequencies = get_vec3(dj.at("angular_frequencies_rad_s"),
                                         "disturbance.angular_frequencies_rad_s");
    if (dj.contains("phases")) {
      const auto& pj = dj["phases"];
      if (!pj.is_array() || pj.size() != 3) {
        throw ConfigError("disturbance.phases: expected 3 entries");
      }
      for (int i = 0; i < 3; ++i) {
        const std::string p = pj[i].get<std::string>();
        if (p == "sin") s.disturbance.phases[i] = DisturbanceSpec::Phase::Sin;
        else if (p == "cos") s.disturbance.phases[i] = DisturbanceSpec::Phase::Cos;
        else throw ConfigError("disturbance.phases: expected 'sin' or 'cos'");
      }
    }
  }

  if (j.contains("smc")) {
    const auto& c = j["smc"];
    s.smc_delta = get_num(c, "delta", "smc");
    s.smc_d_bar = get_num(c, "d_bar", "smc", s.disturbance.bound());
    s.smc_c_w2 = get_num(c, "c_omega2", "smc");
    s.smc_c_we = get_num(c, "c_omega_e", "smc");
    s.smc_k0 = get_num(c, "k0", "smc");
    s.smc_eps_layer = get_num(c, "epsilon_layer", "smc", 1e-3);
  } else {
    s.smc_d_bar = s.disturbance.bound();
  }

  if (j.contains("quat_smc")) {
    const auto& c = j["quat_smc"];
    s.quat_k_q = get_num(c, "k_q", "quat_smc");
    s.quat_eps_layer = get_num(c, "epsilon_layer", "quat_smc", 1e-3);
  }

  if (j.contains("reference")) {
    const auto& c = j["reference"];
    const std::string p = c.value("profile", "zero");
    if (p == "zero") s.reference.profile = ReferenceSpec::Profile::Zero;
    else if (p == "constant") s.reference.profile = ReferenceSpec::Profile::Constant;
    else if (p == "sinusoid") s.reference.profile = ReferenceSpec::Profile::Sinusoid;
    else throw ConfigError("reference.profile: unknown profile '" + p + "'");
    if (c.contains("amplitude_rad_s")) {
      s.reference.amplitude =
          get_vec3(c["amplitude_rad_s"], "reference.amplitude_rad_s");
    }
    if (c.contains("frequency_rad_s")) {
      s.reference.frequency =
          get_vec3(c["frequency_rad_s"], "reference.frequency_rad_s");
    }
    if (c.contains("Rd0_axis")) {
      s.reference.Rd0_axis = get_vec3(c["Rd0_axis"], "reference.Rd0_axis");
    }
    s.reference.Rd0_angle = get_num(c, "Rd0_angle_rad", "reference", 0.0);
  }

  if (j.contains("initial")) {
    const auto& c = j["initial"];
    if (c.contains("R0_axis")) {
      s.initial.R0_axis = get_vec3(c["R0_axis"], "initial.R0_axis");
    }
    s.initial.R0_angle = get_num(c, "R0_angle_rad", "initial", 0.0);
    if (c.contains("omega0_rad_s")) {
      s.initial.omega0 = get_vec3(c["omega0_rad_s"], "initial.omega0_rad_s");
    }
    if (c.contains("q0")) {
      const auto& qj = c["q0"];
      if (!qj.is_array() || qj.size() != 4) {
        throw ConfigError("initial.q0: expected an array of 4 numbers");
      }
      s.initial.q0 = qj[0].get<double>();
      s.initial.qv0 = Vec3(qj[1].get<double>(), qj[2].get<double>(),
                           qj[3].get<double>());
    }
  }

  if (j.contains("sim")) {
    const auto& c = j["sim"];
    s.sim.dt = get_num(c, "dt_s", "sim", s.sim.dt);
    s.sim.T = get_num(c, "T_s", "sim", s.sim.T);
    s.sim.record_stride =
        static_cast<int>(get_num(c, "record_stride", "sim", 100.0));
    s.sim.seed = static_cast<std::uint64_t>(get_num(c, "seed", "sim", 0.0));
    const std::string au = c.value("attitude_update", "expmap");
    if (au == "expmap") s.sim.attitude_update = AttitudeUpdate::ExpMap;
    else if (au == "rk4project") s.sim.attitude_update = AttitudeUpdate::RK4Project;
    else throw ConfigError("sim.attitude_update: expected 'expmap' or 'rk4project'");
  }

  if (j.contains("grid")) {
    const auto& c = j["grid"];
    s.grid.theta_count = static_cast<int>(get_num(c, "theta_count", "grid", 5.0));
    s.grid.omega_count = static_cast<int>(get_num(c, "omega_count", "grid", 5.0));
    s.grid.omega_min = get_num(c, "omega_min_rad_s", "grid", -2.0);
    s.grid.omega_max = get_num(c, "omega_max_rad_s", "grid", 2.0);
    s.grid.variant = parse_variant(c.value("variant", "smooth"), "grid.variant");
  }

  if (j.contains("suite")) {
    s.suite.samples =
        static_cast<int>(get_num(j["suite"], "samples", "suite", 1000.0));
  }

  s.out_prefix = j.value("out_prefix", "out");
  return s;
}

Scenario scenario_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

std::string MetricsSummary::to_json() const {
  json j;
  j["seed"] = seed;
  j["runs"] = json::array();
  for (const auto& r : runs) {
    json rj;
    rj["name"] = r.name;
    rj["min_tr_Re"] = r.metrics.min_tr_Re;
    rj["final_tr_Re"] = r.metrics.final_tr_Re;
    rj["final_we_norm"] = r.metrics.final_we_norm;
    rj["max_u_norm"] = r.metrics.max_u_norm;
    if (r.metrics.reach_time) rj["reach_time_s"] = *r.metrics.reach_time;
    rj["unwinding"] = r.unwinding;
    j["runs"].push_back(rj);
  }
  j["suites"] = json::array();
  for (const auto& s : suites) {
    json sj;
    sj["name"] = s.name;
    sj["samples"] = s.samples;
    sj["max_residual"] = s.max_residual;
    if (s.tolerance > 0.0) sj["tolerance"] = s.tolerance;
    sj["pass"] = s.pass;
    j["suites"].push_back(sj);
  }
  return j.dump(2) + "\n";
}

std::string MetricsSummary::to_table() const {
  std::ostringstream os;
  for (const auto& r : runs) {
    os << r.name << ": min_tr_Re=" << r.metrics.min_tr_Re
       << " final_tr_Re=" << r.metrics.final_tr_Re
       << " final_|w_e|=" << r.metrics.final_we_norm
       << " max_|u|=" << r.metrics.max_u_norm;
    if (r.metrics.reach_time) os << " reach_time=" << *r.metrics.reach_time;
    os << (r.unwinding ? " [unwinding]" : "") << "\n";
  }
  for (const auto& s : suites) {
    os << s.name << ": samples=" << s.samples
       << " max_residual=" << s.max_residual;
    if (s.tolerance > 0.0) {
      os << " tol=" << s.tolerance << (s.pass ? " PASS" : " FAIL");
    } else {
      os << " (informational)";
    }
    os << "\n";
  }
  return os.str();
}

bool MetricsSummary::all_pass() const {
  for (const auto& s : suites) {
    if (!s.pass) return false;
  }
  return true;
}

MetricsSummary run_unwinding_comparison(const Scenario& cfg) {
  if (cfg.kind != ScenarioKind::UnwindingComparison) {
    throw ConfigError("kind: expected unwinding_comparison");
  }
  const Inertia J(cfg.inertia);
  MetricsSummary summary;
  summary.seed = cfg.sim.seed;

  QuatState qinit;
  qinit.q = UnitQuaternion(cfg.initial.q0, cfg.initial.qv0);
  qinit.w = cfg.initial.omega0;
  const QuatSmcConfig qcfg(cfg.quat_k_q, cfg.quat_eps_layer);
  const SimResult quat =
      simulate_quat_closed_loop(qinit, J, qcfg, cfg.disturbance, cfg.sim);
  write_file(cfg.out_prefix + "_quat.csv", records_to_csv(quat.records));
  summary.runs.push_back(RunSummary{"quaternion", quat.metrics,
                                    quat.metrics.min_tr_Re < 0.0});

  BodyState binit{axis_angle_rot(cfg.initial.R0_axis, cfg.initial.R0_angle),
                  cfg.initial.omega0};
  Reference ref = cfg.reference.build();
  ref.validate(cfg.sim.T);
  const SimResult so3 = simulate_so3_closed_loop(binit, ref, J,
                                                 cfg.make_smc(J),
                                                 cfg.disturbance, cfg.sim);
  write_file(cfg.out_prefix + "_so3.csv", records_to_csv(so3.records));
  summary.runs.push_back(
      RunSummary{"so3", so3.metrics, so3.metrics.min_tr_Re < 0.0});

  write_file(cfg.out_prefix + "_summary.json", summary.to_json());
  return summary;
}

MetricsSummary run_tracking(const Scenario& cfg) {
  if (cfg.kind != ScenarioKind::Tracking &&
      cfg.kind != ScenarioKind::Regulation) {
    throw ConfigError("kind: expected tracking or regulation");
  }
  const Inertia J(cfg.inertia);
  MetricsSummary summary;
  summary.seed = cfg.sim.seed;

  BodyState init{axis_angle_rot(cfg.initial.R0_axis, cfg.initial.R0_angle),
                 cfg.initial.omega0};
  Reference ref = cfg.reference.build();
  ref.validate(cfg.sim.T);
  const SimResult res = simulate_so3_closed_loop(init, ref, J,
                                                 cfg.make_smc(J),
                                                 cfg.disturbance, cfg.sim);
  write_file(cfg.out_prefix + ".csv", records_to_csv(res.records));
  summary.runs.push_back(
      RunSummary{cfg.kind == ScenarioKind::Tracking ? "tracking" : "regulation",
                 res.metrics, res.metrics.min_tr_Re < 0.0});
  write_file(cfg.out_prefix + "_summary.json", summary.to_json());
  return summary;
}

MetricsSummary run_cylinder_portrait(const Scenario& cfg) {
  if (cfg.kind != ScenarioKind::CylinderPortrait) {
    throw ConfigError("kind: expected cylinder_portrait");
  }
  MetricsSummary summary;
  summary.seed = cfg.sim.seed;

  std::ostringstream csv;
  csv << "run_id,t,theta,omega,sigma\n";
  int run_id = 0;
  for (int i = 0; i < cfg.grid.theta_count; ++i) {
    const double theta0 = 2.0 * M_PI * i / cfg.grid.theta_count;
    for (int k = 0; k < cfg.grid.omega_count; ++k) {
      const double omega0 =
          cfg.grid.omega_count == 1
              ? cfg.grid.omega_min
              : cfg.grid.omega_min + (cfg.grid.omega_max - cfg.grid.omega_min) *
                                         k / (cfg.grid.omega_count - 1);
      const auto traj = simulate_cylinder(CylinderState{theta0, omega0},
                                          cfg.grid.variant, cfg.sim);
      for (const auto& r : traj) {
        csv << run_id << ',' << fmt17(r.t) << ',' << fmt17(r.theta) << ','
            << fmt17(r.omega) << ',' << fmt17(r.sigma) << "\n";
      }
      RunMetrics m;
      const auto& last = traj.back();
      const double dist = std::hypot(
          std::min(last.theta, 2.0 * M_PI - last.theta), last.omega);
      m.final_tr_Re = dist;  // distance to the stable equilibrium (0,0)
      m.min_tr_Re = dist;
      m.final_we_norm = std::abs(last.omega);
      m.max_u_norm = 0.0;
      summary.runs.push_back(
          RunSummary{"grid_" + std::to_string(run_id), m, false});
      ++run_id;
    }
  }
  write_file(cfg.out_prefix + ".csv", csv.str());
  write_file(cfg.out_prefix + "_summary.json", summary.to_json());
  return summary;
}

namespace {

GroupElement random_element(Rng& rng) {
  return GroupElement{random_rotation(rng), random_vec3(rng, -2.0, 2.0)};
}

GroupElement random_sl_element(Rng& rng) {
  const Rotation R = random_rotation(rng);
  return GroupElement{R, -vee(pa(R.matrix()))};
}

double element_dist(const GroupElement& a, const GroupElement& b) {
  return std::max((a.R.matrix() - b.R.matrix()).norm(), (a.w - b.w).norm());
}

}  // namespace

MetricsSummary run_property_suite(const Scenario& cfg) {
  if (cfg.kind != ScenarioKind::PropertySuite) {
    throw ConfigError("kind: expected property_suite");
  }
  MetricsSummary summary;
  summary.seed = cfg.sim.seed;
  const int n = cfg.suite.samples;
  if (n <= 0) return summary;

  Rng rng(cfg.sim.seed);
  const GroupElement ident{Rotation::identity(), Vec3::Zero()};

  auto add = [&summary, n](const std::string& name, double residual,
                           double tol) {
    summary.suites.push_back(
        SuiteResult{name, n, residual, tol, tol <= 0.0 || residual <= tol});
  };

  {
    double r_id = 0.0, r_inv = 0.0, r_assoc = 0.0, r_siginv = 0.0;
    for (int i = 0; i < n; ++i) {
      const GroupElement a = random_element(rng);
      r_id = std::max({r_id, element_dist(group_mul(ident, a), a),
                       element_dist(group_mul(a, ident), a)});
      const GroupElement ai = group_inv(a);
      r_inv = std::max({r_inv, element_dist(group_mul(ai, a), ident),
                        element_dist(group_mul(a, ai), ident)});
      r_siginv = std::max(r_siginv, (sliding_sigma(ai.R, ai.w) +
                                     sliding_sigma(a.R, a.w))
                                        .norm());
      const GroupElement b = random_element(rng);
      const GroupElement c = random_element(rng);
      r_assoc = std::max(r_assoc, element_dist(group_mul(group_mul(a, b), c),
                                               group_mul(a, group_mul(b, c))));
    }
    add("group-identity", r_id, 1e-12);
    add("group-inverse", r_inv, 1e-9);
    add("sigma-inversion", r_siginv, 1e-12);
    add("associativity-defect", r_assoc, 0.0);  // informational
  }

  {
    double r_mul = 0.0, r_inv = 0.0;
    for (int i = 0; i < n; ++i) {
      const GroupElement a = random_sl_element(rng);
      const GroupElement b = random_sl_element(rng);
      r_mul = std::max(r_mul, sl_closure_check(a, b).norm());
      const GroupElement ai = group_inv(a);
      r_inv = std::max(r_inv, sliding_sigma(ai.R, ai.w).norm());
    }
    add("subgroup-closure-mul", r_mul, 1e-8);
    add("subgroup-closure-inv", r_inv, 1e-12);
  }

  {
    // Analytic Lyapunov rate along the reduced flow vs the closed form.
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
      const Rotation R = random_rotation(rng);
      const double vdot = -0.5 * reduced_deriv(R).trace();
      const double expected = -vee(pa(R.matrix())).squaredNorm();
      r = std::max(r, std::abs(vdot - expected));
    }
    add("lyapunov-rate", r, 1e-10);
  }

  {
    double r_hook = 0.0, r_inner = 0.0, r_sym = 0.0, r_trace = 0.0;
    for (int i = 0; i < n; ++i) {
      const Rotation R = random_rotation(rng);
      const Vec3 v = random_vec3(rng, -2.0, 2.0);
      const Vec3 w = random_vec3(rng, -2.0, 2.0);
      r_hook = std::max(
          r_hook,
          (hat(R * v) - R.matrix() * hat(v) * R.matrix().transpose()).norm());
      r_inner = std::max(r_inner,
                         std::abs(inner(hat(v), hat(w)) - 2.0 * v.dot(w)));
      const Mat3 A = ps(R.matrix() + hat(v));
      r_sym = std::max(r_sym, std::abs(inner(A, hat(w))));
      const AxisAngle aa = log_so3(R);
      r_trace = std::max(
          r_trace, std::abs(R.trace() - (1.0 + 2.0 * std::cos(aa.angle))));
    }
    add("hook-identity", r_hook, 1e-12);
    add("inner-half-identity", r_inner, 1e-12);
    add("symmetric-orthogonality", r_sym, 1e-12);
    add("trace-identity", r_trace, 1e-12);
  }

  {
    // Free rigid body: kinetic energy and |J w| conserved under RK4.
    const Inertia J(cfg.inertia);
    double r = 0.0;
    const int runs = std::min(n, 5);
    for (int i = 0; i < runs; ++i) {
      Vec3 w = random_vec3(rng, -2.0, 2.0);
      const double E0 = 0.5 * w.dot(J.matrix() * w);
      const double L0 = (J.matrix() * w).norm();
      const double h = 1e-3;
      auto f = [&J](const Vec3& x) {
        return Vec3(J.inverse() * ((J.matrix() * x).cross(x)));
      };
      for (int k = 0; k < 10000; ++k) {
        const Vec3 k1 = f(w);
        const Vec3 k2 = f(w + 0.5 * h * k1);
        const Vec3 k3 = f(w + 0.5 * h * k2);
        const Vec3 k4 = f(w + h * k3);
        w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      const double E = 0.5 * w.dot(J.matrix() * w);
      const double L = (J.matrix() * w).norm();
      r = std::max({r, std::abs(E - E0) / std::max(E0, 1e-12),
                    std::abs(L - L0) / std::max(L0, 1e-12)});
    }
    add("free-body-conservation", r, 1e-6);
  }

  {
    // Finite-difference directional derivatives of sigma stay bounded.
    double r = 0.0;
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
      const Rotation R = random_rotation(rng);
      const Vec3 we = random_vec3(rng, -2.0, 2.0);
      const Vec3 dir = random_vec3(rng, -1.0, 1.0).normalized();
      const Rotation Rp = step_attitude(R, dir, h, AttitudeUpdate::ExpMap);
      const Vec3 fd =
          (sliding_sigma(Rp, we + h * dir) - sliding_sigma(R, we)) / h;
      r = std::max(r, fd.norm());
    }
    add("sigma-directional-derivative", r, 3.0);
  }

  write_file(cfg.out_prefix + "_summary.json", summary.to_json());
  return summary;
}

MetricsSummary run_scenario(const Scenario& cfg) {
  switch (cfg.kind) {
    case ScenarioKind::UnwindingComparison:
      return run_unwinding_comparison(cfg);
    case ScenarioKind::Tracking:
    case ScenarioKind::Regulation:
      return run_tracking(cfg);
    case ScenarioKind::CylinderPortrait:
      return run_cylinder_portrait(cfg);
    case ScenarioKind::PropertySuite:
      return run_property_suite(cfg);
  }
  throw ConfigError("kind: unhandled scenario kind");
}

}  // namespace attsmc

#include "attsmc/sim.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace attsmc {

namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Accumulates reach-time / extremum metrics over per-step samples.
class MetricsTracker {
 public:
  MetricsTracker(double tol, double hold) : tol_(tol), hold_(hold) {}

  void sample(double t, double sigma_norm, double tr_Re, double u_norm) {
    min_tr_ = std::min(min_tr_, tr_Re);
    max_u_ = std::max(max_u_, u_norm);
    last_tr_ = tr_Re;
    if (reach_) return;
    if (sigma_norm <= tol_) {
      if (!candidate_) candidate_ = t;
      if (t - *candidate_ >= hold_) reach_ = *candidate_;
    } else {
      candidate_.reset();
    }
  }

  RunMetrics finish(double final_we_norm) const {
    return RunMetrics{reach_, min_tr_, last_tr_, final_we_norm, max_u_};
  }

 private:
  double tol_;
  double hold_;
  std::optional<double> candidate_;
  std::optional<double> reach_;
  double min_tr_ = 3.0;
  double last_tr_ = 3.0;
  double max_u_ = 0.0;
};

// RK4 weights applied to stage values: (s1 + 2 s2 + 2 s3 + s4) / 6.
Vec3 rk4_average(const Vec3& s1, const Vec3& s2, const Vec3& s3,
                 const Vec3& s4) {
  return (s1 + 2.0 * s2 + 2.0 * s3 + s4) / 6.0;
}

}  // namespace

void SimConfig::validate() const {
  if (dt <= 0.0) throw std::invalid_argument("SimConfig: dt must be > 0");
  if (T <= 0.0) throw std::invalid_argument("SimConfig: T must be > 0");
  if (dt > T) throw std::invalid_argument("SimConfig: dt must not exceed T");
  if (record_stride < 1) {
    throw std::invalid_argument("SimConfig: record_stride must be >= 1");
  }
}

DisturbanceSpec DisturbanceSpec::paper() {
  DisturbanceSpec d;
  d.amplitudes = Vec3::Ones();
  d.frequencies = Vec3(5.0 * M_PI, 7.0 * M_PI, 9.0 * M_PI);
  d.phases[0] = Phase::Sin;
  d.phases[1] = Phase::Cos;
  d.phases[2] = Phase::Sin;
  return d;
}

Vec3 eval_disturbance(const DisturbanceSpec& spec, double t) {
  Vec3 d;
  for (int i = 0; i < 3; ++i) {
    const double arg = spec.frequencies(i) * t;
    const double trig = spec.phases[i] == DisturbanceSpec::Phase::Sin
                            ? std::sin(arg)
                            : std::cos(arg);
    d(i) = spec.amplitudes(i) * trig;
  }
  return d;
}

Rotation step_attitude(const Rotation& R, const Vec3& w, double dt,
                       AttitudeUpdate mode) {
  const double n = w.norm();
  if (mode == AttitudeUpdate::ExpMap) {
    if (n * dt == 0.0) return R;
    return R * rodrigues(AxisAngle(w / n, n * dt));
  }
  // RK4 stage on Rdot = R W, then repair orthogonality.
  const Mat3 W = hat(w);
  const Mat3& m = R.matrix();
  const Mat3 k1 = m * W;
  const Mat3 k2 = (m + 0.5 * dt * k1) * W;
  const Mat3 k3 = (m + 0.5 * dt * k2) * W;
  const Mat3 k4 = (m + dt * k3) * W;
  return Rotation::project(m + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

SimResult simulate_so3_closed_loop(const BodyState& init, const Reference& ref,
                                   const Inertia& J, const SmcConfig& smc,
                                   const DisturbanceSpec& dist,
                                   const SimConfig& sim) {
  sim.validate();
  const auto n_steps = static_cast<std::size_t>(std::llround(sim.T / sim.dt));
  const double reach_tol = std::max(smc.eps_layer, 1e-3);

  SimResult out;
  out.records.reserve(n_steps / sim.record_stride + 2);
  MetricsTracker tracker(reach_tol, 0.1);

  Rotation R = init.R;
  Vec3 w = init.w;
  Rotation R_d = ref.R_d0;
  Vec3 w_e_last = Vec3::Zero();

  auto w_dot = [&J](const Vec3& wv, const Vec3& torque, const Vec3& d) {
    return Vec3(J.inverse() * ((J.matrix() * wv).cross(wv) + torque + d));
  };

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = k * sim.dt;
    const Vec3 wd = ref.w_d(t);
    const ErrorState e = error_state(BodyState{R, w}, R_d, wd);
    const Vec3 sigma = sliding_sigma(e.R_e, e.w_e);
    const Vec3 v = smc_so3(e, w, smc);
    const Vec3 u = feedforward(e, wd, ref.dw_d(t), J, v);
    const LyapunovReadout lyap = lyapunov_readout(e, J);
    w_e_last = e.w_e;

    if (!finite(w) || !R.matrix().allFinite() || !finite(u)) {
      throw NumericalAbort(out.records.size());
    }
    tracker.sample(t, sigma.norm(), e.R_e.trace(), u.norm());
    if (k % sim.record_stride == 0 || k == n_steps) {
      out.records.push_back(TrajectoryRecord{t, R.matrix(), w, sigma, u,
                                             e.R_e.trace(), lyap.V_R,
                                             lyap.V_sigma, std::nullopt});
    }
    if (k == n_steps) break;

    // RK4 on the velocity with the torque held over the step; the
    // attitude factors advance by the exponential of the stage-averaged
    // velocity, which keeps them on SO(3) by construction.
    const double h = sim.dt;
    const Vec3 d1 = eval_disturbance(dist, t);
    const Vec3 d2 = eval_disturbance(dist, t + 0.5 * h);
    const Vec3 d4 = eval_disturbance(dist, t + h);
    const Vec3 k1 = w_dot(w, u, d1);
    const Vec3 w2 = w + 0.5 * h * k1;
    const Vec3 k2 = w_dot(w2, u, d2);
    const Vec3 w3 = w + 0.5 * h * k2;
    const Vec3 k3 = w_dot(w3, u, d2);
    const Vec3 w4 = w + h * k3;
    const Vec3 k4 = w_dot(w4, u, d4);

    const Vec3 w_avg = rk4_average(w, w2, w3, w4);
    const Vec3 wd_avg =
        rk4_average(wd, ref.w_d(t + 0.5 * h), ref.w_d(t + 0.5 * h),
                    ref.w_d(t + h));

    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    R = step_attitude(R, w_avg, h, sim.attitude_update);
    R_d = step_attitude(R_d, wd_avg, h, AttitudeUpdate::ExpMap);

    if ((k + 1) % 20000 == 0) {  // periodic drift repair
      R = Rotation::project(R.matrix());
      R_d = Rotation::project(R_d.matrix());
    }
  }

  out.metrics = tracker.finish(w_e_last.norm());
  return out;
}

SimResult simulate_quat_closed_loop(const QuatState& init, const Inertia& J,
                                    const QuatSmcConfig& cfg,
                                    const DisturbanceSpec& dist,
                                    const SimConfig& sim) {
  sim.validate();
  const auto n_steps = static_cast<std::size_t>(std::llround(sim.T / sim.dt));
  const double reach_tol = std::max(cfg.eps_layer, 1e-3);

  SimResult out;
  out.records.reserve(n_steps / sim.record_stride + 2);
  MetricsTracker tracker(reach_tol, 0.1);

  double q0 = init.q.q0;
  Vec3 qv = init.q.qv;
  Vec3 w = init.w;
  bool drift_warned = false;

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = k * sim.dt;
    const UnitQuaternion q(q0, qv);
    const Vec3 sigma = qv + w;
    const Vec3 u = smc_quat(q, w, cfg);
    const Rotation R_e = quat_to_rot(q);
    const double tr = R_e.trace();

    if (!finite(w) || !finite(qv) || !std::isfinite(q0)) {
      throw NumericalAbort(out.records.size());
    }
    tracker.sample(t, sigma.norm(), tr, u.norm());
    if (k % sim.record_stride == 0 || k == n_steps) {
      const LyapunovReadout lyap =
          lyapunov_readout(ErrorState{R_e, w}, J);
      out.records.push_back(TrajectoryRecord{t, R_e.matrix(), w, sigma, u, tr,
                                             lyap.V_R, lyap.V_sigma, q0});
    }
    if (k == n_steps) break;

    const double h = sim.dt;
    auto deriv = [&](double a0, const Vec3& av, const Vec3& aw, double ts) {
      QuatDeriv dq;
      dq.q0_dot = -0.5 * av.dot(aw);
      dq.qv_dot = 0.5 * (a0 * aw + av.cross(aw));
      dq.w_dot = J.inverse() * ((J.matrix() * aw).cross(aw) + u +
                                eval_disturbance(dist, ts));
      return dq;
    };
    const QuatDeriv k1 = deriv(q0, qv, w, t);
    const QuatDeriv k2 = deriv(q0 + 0.5 * h * k1.q0_dot,
                               qv + 0.5 * h * k1.qv_dot,
                               w + 0.5 * h * k1.w_dot, t + 0.5 * h);
    const QuatDeriv k3 = deriv(q0 + 0.5 * h * k2.q0_dot,
                               qv + 0.5 * h * k2.qv_dot,
                               w + 0.5 * h * k2.w_dot, t + 0.5 * h);
    const QuatDeriv k4 = deriv(q0 + h * k3.q0_dot, qv + h * k3.qv_dot,
                               w + h * k3.w_dot, t + h);
    q0 += h / 6.0 * (k1.q0_dot + 2.0 * k2.q0_dot + 2.0 * k3.q0_dot + k4.q0_dot);
    qv += h / 6.0 * (k1.qv_dot + 2.0 * k2.qv_dot + 2.0 * k3.qv_dot + k4.qv_dot);
    w += h / 6.0 * (k1.w_dot + 2.0 * k2.w_dot + 2.0 * k3.w_dot + k4.w_dot);

    const double qn = std::sqrt(q0 * q0 + qv.squaredNorm());
    if (!drift_warned && std::abs(qn - 1.0) > 1e-6) {
      std::cerr << "warning: quaternion norm drift " << std::abs(qn - 1.0)
                << " at t = " << t + h << "\n";
      drift_warned = true;
    }
    q0 /= qn;
    qv /= qn;
  }

  out.metrics = tracker.finish(w.norm());
  return out;
}

std::vector<CylinderRecord> simulate_cylinder(const CylinderState& init,
                                              S1Variant variant,
                                              const SimConfig& sim) {
  sim.validate();
  const auto n_steps = static_cast<std::size_t>(std::llround(sim.T / sim.dt));

  std::vector<CylinderRecord> records;
  records.reserve(n_steps / sim.record_stride + 2);

  double theta = wrap_angle(init.theta);
  double omega = init.omega;

  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double t = k * sim.dt;
    const double sigma = s1_sigma(theta, omega, variant);
    if (k % sim.record_stride == 0 || k == n_steps) {
      records.push_back(CylinderRecord{t, theta, omega, sigma});
    }
    if (k == n_steps) break;

    const double u = s1_control(theta, omega, variant);
    const double h = sim.dt;
    // RK4 on (theta, omega) with u held over the step.
    const double k1t = omega, k1w = u;
    const double k2t = omega + 0.5 * h * k1w, k2w = u;
    const double k3t = omega + 0.5 * h * k2w, k3w = u;
    const double k4t = omega + h * k3w, k4w = u;
    theta = wrap_angle(theta + h / 6.0 * (k1t + 2 * k2t + 2 * k3t + k4t));
    omega += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
  }
  return records;
}

std::string records_to_csv(const std::vector<TrajectoryRecord>& records) {
  const bool with_q0 = !records.empty() && records.front().q0.has_value();
  std::ostringstream os;
  os << "t,R11,R12,R13,R21,R22,R23,R31,R32,R33,"
        "wx,wy,wz,sx,sy,sz,ux,uy,uz,trRe,VR,Vsig";
  if (with_q0) os << ",q0";
  os << "\n";
  for (const auto& r : records) {
    os << fmt17(r.t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) os << ',' << fmt17(r.R(i, j));
    for (int i = 0; i < 3; ++i) os << ',' << fmt17(r.w(i));
    for (int i = 0; i < 3; ++i) os << ',' << fmt17(r.sigma(i));
    for (int i = 0; i < 3; ++i) os << ',' << fmt17(r.u(i));
    os << ',' << fmt17(r.tr_Re) << ',' << fmt17(r.V_R) << ','
       << fmt17(r.V_sigma);
    if (with_q0) os << ',' << fmt17(r.q0.value());
    os << "\n";
  }
  return os.str();
}

std::vector<TrajectoryRecord> records_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line)) {
    throw std::invalid_argument("records_from_csv: empty input");
  }
  const bool with_q0 = line.size() >= 3 && line.substr(line.size() - 3) == ",q0";
  std::vector<TrajectoryRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
    const std::size_t expected = with_q0 ? 23u : 22u;
    if (vals.size() != expected) {
      throw std::invalid_argument("records_from_csv: malformed row");
    }
    TrajectoryRecord r;
    std::size_t i = 0;
    r.t = vals[i++];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.R(a, b) = vals[i++];
    for (int a = 0; a < 3; ++a) r.w(a) = vals[i++];
    for (int a = 0; a < 3; ++a) r.sigma(a) = vals[i++];
    for (int a = 0; a < 3; ++a) r.u(a) = vals[i++];
    r.tr_Re = vals[i++];
    r.V_R = vals[i++];
    r.V_sigma = vals[i++];
    if (with_q0) r.q0 = vals[i++];
    records.push_back(r);
  }
  return records;
}

}  // namespace attsmc

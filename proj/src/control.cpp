#include "control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynamics.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace spr {

namespace {

void require_gain(const MatX& gain, int dim, const char* name) {
  if (gain.rows() != dim || gain.cols() != dim) {
    throw DimensionMismatch(std::string("gain ") + name + " has wrong shape");
  }
  if (!gain.isApprox(gain.transpose(), 1e-12)) {
    throw ConfigError(std::string("gain ") + name + " must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<MatX> eig(gain);
  if (eig.eigenvalues().minCoeff() < 0.0) {
    throw ConfigError(std::string("gain ") + name + " must be positive semidefinite");
  }
}

/// Desired signals linearly interpolated inside one sample interval.
struct DesiredInterp {
  const Trajectory& traj;

  void at(double t, VecX& th, VecX& thd, VecX& thdd) const {
    const double t_end = traj.t.back();
    const double tc = std::clamp(t, 0.0, t_end);
    const double dt = traj.t[1] - traj.t[0];
    const int i = std::min(static_cast<int>(tc / dt), traj.samples() - 2);
    const double a = (tc - traj.t[i]) / dt;
    th = (1.0 - a) * traj.theta[i] + a * traj.theta[i + 1];
    thd = (1.0 - a) * traj.theta_dot[i] + a * traj.theta_dot[i + 1];
    thdd = (1.0 - a) * traj.theta_ddot[i] + a * traj.theta_ddot[i + 1];
  }
};

VecX actuator_torque(const RobotModel& model, const KinematicsEval& kin, const VecX& n) {
  return kin.J_actuator.transpose().partialPivLu().solve(n);
}

}  // namespace

ControlRun simulate_idc(const RobotModel& model, const Trajectory& desired, const MatX& kp,
                        const MatX& kd, double mass_scale) {
  const int m = model.dof();
  require_gain(kp, m, "Kp");
  require_gain(kd, m, "Kd");
  if (desired.samples() < 2) throw ConfigError("simulate_idc: trajectory too short");

  ControlRun run;
  VecX theta = desired.theta.front();
  VecX theta_dot = desired.theta_dot.front();
  const DesiredInterp interp{desired};

  struct Derivs {
    VecX theta_dot, theta_ddot;
    VecX tau;
  };
  // Control law evaluated at every integrator stage (continuous control,
  // desired signals sampled at the trajectory rate and interpolated).
  auto f = [&](double t, const VecX& th, const VecX& thd) {
    VecX th_d(m), thd_d(m), thdd_d(m);
    interp.at(t, th_d, thd_d, thdd_d);
    const VecX e = th - th_d;
    const VecX e_dot = thd - thd_d;
    const KinematicsEval kin = model.eval_kinematics(th, thd);
    const DynamicsMatrices dyn = dynamics_matrices(model, th, thd);
    // The controller's parameter copy is the true one uniformly scaled; the
    // dynamics are linear in the parameters, so the scale factors out.
    const VecX a_ref = thdd_d - kd * e_dot - kp * e;
    const VecX n_cmd = mass_scale * (dyn.M * a_ref + dyn.C * thd + dyn.g);
    Derivs d;
    d.tau = actuator_torque(model, kin, n_cmd);
    d.theta_dot = thd;
    d.theta_ddot = forward_dynamics(model, th, thd, d.tau);
    return d;
  };

  const int n = desired.samples();
  for (int i = 0; i < n; ++i) {
    const double t = desired.t[i];
    try {
      const Derivs d1 = f(t, theta, theta_dot);

      run.t.push_back(t);
      run.theta.push_back(theta);
      run.theta_dot.push_back(theta_dot);
      run.e.push_back(theta - desired.theta[i]);
      run.s.push_back(theta_dot - desired.theta_dot[i]);
      run.tau.push_back(d1.tau);

      if (i + 1 < n) {
        const double dt = desired.t[i + 1] - t;
        const Derivs d2 = f(t + 0.5 * dt, theta + 0.5 * dt * d1.theta_dot,
                            theta_dot + 0.5 * dt * d1.theta_ddot);
        const Derivs d3 = f(t + 0.5 * dt, theta + 0.5 * dt * d2.theta_dot,
                            theta_dot + 0.5 * dt * d2.theta_ddot);
        const Derivs d4 = f(t + dt, theta + dt * d3.theta_dot,
                            theta_dot + dt * d3.theta_ddot);
        theta += dt / 6.0 *
                 (d1.theta_dot + 2.0 * d2.theta_dot + 2.0 * d3.theta_dot + d4.theta_dot);
        theta_dot += dt / 6.0 * (d1.theta_ddot + 2.0 * d2.theta_ddot + 2.0 * d3.theta_ddot +
                                 d4.theta_ddot);
      }
    } catch (const std::runtime_error& err) {
      run.completed = false;
      run.halt_reason = err.what();
      break;
    }
  }
  return run;
}

ControlRun simulate_slotine_li(const RobotModel& model, const Trajectory& desired,
                               const MatX& k, const MatX& lambda, const MatX& gamma,
                               const VecX& pi_hat0, const ReductionMap* map) {
  const int m = model.dof();
  require_gain(k, m, "K");
  require_gain(lambda, m, "Lambda");
  const int full_dim = 9 * model.body_count();
  require_gain(gamma, full_dim, "Gamma");
  if (pi_hat0.size() != full_dim) {
    throw DimensionMismatch("simulate_slotine_li: pi_hat0 must cover all bodies");
  }
  if (desired.samples() < 2) throw ConfigError("simulate_slotine_li: trajectory too short");

  // Reduced mode: project the initial estimate and the adaptation gain so
  // the reduced trace reproduces the full one.
  const bool reduced = map != nullptr;
  const MatX gamma_eff = reduced ? MatX(map->B * gamma * map->B.transpose()) : gamma;
  VecX pi_hat = reduced ? VecX(map->B * pi_hat0) : pi_hat0;

  const DesiredInterp interp{desired};

  auto regressor_at = [&](const VecX& th, const VecX& thd, const VecX& thr_dot,
                          const VecX& thr_ddot) {
    MatX y = slotine_li_regressor(model, th, thd, thr_dot, thr_ddot);
    return reduced ? MatX(reduce_regressor(y, *map)) : y;
  };

  ControlRun run;
  VecX theta = desired.theta.front();
  VecX theta_dot = desired.theta_dot.front();

  struct Derivs {
    VecX theta_dot, theta_ddot, pi_hat_dot;
    VecX tau;  // torque at the evaluation point (recorded at stage 1)
  };
  auto f = [&](double t, const VecX& th, const VecX& thd, const VecX& ph) {
    VecX th_d(m), thd_d(m), thdd_d(m);
    interp.at(t, th_d, thd_d, thdd_d);
    const VecX e = th - th_d;
    const VecX e_dot = thd - thd_d;
    const VecX s = e_dot + lambda * e;
    const VecX thr_dot = thd_d - lambda * e;
    const VecX thr_ddot = thdd_d - lambda * e_dot;
    const MatX y = regressor_at(th, thd, thr_dot, thr_ddot);
    const VecX n_cmd = y * ph - k * s;
    const KinematicsEval kin = model.eval_kinematics(th, thd);
    Derivs d;
    d.tau = actuator_torque(model, kin, n_cmd);
    d.theta_dot = thd;
    d.theta_ddot = forward_dynamics(model, th, thd, d.tau);
    d.pi_hat_dot = -gamma_eff * (y.transpose() * s);
    return d;
  };

  const int n = desired.samples();
  for (int i = 0; i < n; ++i) {
    const double t = desired.t[i];
    try {
      const Derivs d1 = f(t, theta, theta_dot, pi_hat);

      run.t.push_back(t);
      run.theta.push_back(theta);
      run.theta_dot.push_back(theta_dot);
      run.e.push_back(theta - desired.theta[i]);
      run.s.push_back((theta_dot - desired.theta_dot[i]) +
                      lambda * (theta - desired.theta[i]));
      run.tau.push_back(d1.tau);
      run.pi_hat.push_back(pi_hat);

      if (i + 1 < n) {
        const double dt = desired.t[i + 1] - t;
        const Derivs d2 = f(t + 0.5 * dt, theta + 0.5 * dt * d1.theta_dot,
                            theta_dot + 0.5 * dt * d1.theta_ddot,
                            pi_hat + 0.5 * dt * d1.pi_hat_dot);
        const Derivs d3 = f(t + 0.5 * dt, theta + 0.5 * dt * d2.theta_dot,
                            theta_dot + 0.5 * dt * d2.theta_ddot,
                            pi_hat + 0.5 * dt * d2.pi_hat_dot);
        const Derivs d4 = f(t + dt, theta + dt * d3.theta_dot,
                            theta_dot + dt * d3.theta_ddot, pi_hat + dt * d3.pi_hat_dot);
        theta += dt / 6.0 *
                 (d1.theta_dot + 2.0 * d2.theta_dot + 2.0 * d3.theta_dot + d4.theta_dot);
        theta_dot += dt / 6.0 * (d1.theta_ddot + 2.0 * d2.theta_ddot + 2.0 * d3.theta_ddot +
                                 d4.theta_ddot);
        pi_hat += dt / 6.0 * (d1.pi_hat_dot + 2.0 * d2.pi_hat_dot + 2.0 * d3.pi_hat_dot +
                              d4.pi_hat_dot);
      }
    } catch (const std::runtime_error& err) {
      run.completed = false;
      run.halt_reason = err.what();
      break;
    }
  }
  return run;
}

RunMetrics run_metrics(const ControlRun& run, const VecX& pi_true) {
  RunMetrics metrics;
  if (run.t.empty()) return metrics;
  double sq = 0.0;
  long count = 0;
  for (const VecX& e : run.e) {
    sq += e.squaredNorm();
    count += e.size();
  }
  metrics.rmse = std::sqrt(sq / static_cast<double>(count));
  metrics.terminal_error = run.e.back().norm();
  for (const VecX& tau : run.tau) {
    metrics.torque_peak = std::max(metrics.torque_peak, tau.cwiseAbs().maxCoeff());
  }
  if (!run.pi_hat.empty() && pi_true.size() == run.pi_hat.back().size()) {
    metrics.param_error_norm = (run.pi_hat.back() - pi_true).norm();
  }
  return metrics;
}

std::string metrics_to_json(const RunMetrics& metrics, bool completed) {
  nlohmann::json j;
  j["rmse"] = metrics.rmse;
  j["terminal_error"] = metrics.terminal_error;
  j["torque_peak"] = metrics.torque_peak;
  j["param_error_norm"] = metrics.param_error_norm;
  j["completed"] = completed;
  return j.dump(2);
}

}  // namespace spr

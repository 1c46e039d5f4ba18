#pragma once

#include <string>
#include <vector>

#include "regressor.hpp"
#include "trajectory.hpp"

namespace spr {

/// Closed-loop run record sampled at the desired trajectory's rate.
struct ControlRun {
  std::vector<double> t;
  std::vector<VecX> theta;
  std::vector<VecX> theta_dot;
  std::vector<VecX> e;         // theta - theta_d
  std::vector<VecX> s;         // sliding variable (S-L runs; e_dot for IDC)
  std::vector<VecX> tau;
  std::vector<VecX> pi_hat;    // adaptive runs only; empty otherwise
  bool completed = true;
  std::string halt_reason;
};

/// Computed-torque control with an optionally mismatched parameter copy:
/// tau = J^-T (M_hat (qdd_d - Kd edot - Kp e) + C_hat qd + g_hat), applied
/// to the true plant. mass_scale scales every controller-side mass and
/// inertia (1 = exact model).
ControlRun simulate_idc(const RobotModel& model, const Trajectory& desired, const MatX& kp,
                        const MatX& kd, double mass_scale = 1.0);

/// Slotine-Li adaptive control, tau = J^-T (Y_S pi_hat - K s) with the
/// gradient adaptation pi_hat_dot = -Gamma Y_S^T s integrated in the same
/// RK4 step as the plant. With a ReductionMap the reduced regressor and
/// Gamma_r = B Gamma B^T are used, which reproduces the full-parameter
/// torque trace exactly when pi_hat0 projections agree.
ControlRun simulate_slotine_li(const RobotModel& model, const Trajectory& desired,
                               const MatX& k, const MatX& lambda, const MatX& gamma,
                               const VecX& pi_hat0, const ReductionMap* map = nullptr);

struct RunMetrics {
  double rmse = 0.0;            // position error, all coordinates pooled
  double terminal_error = 0.0;  // ||e|| at the final sample
  double torque_peak = 0.0;
  double param_error_norm = 0.0;  // ||pi_hat - pi_true|| at the end, if adaptive
};

RunMetrics run_metrics(const ControlRun& run, const VecX& pi_true = VecX());

std::string metrics_to_json(const RunMetrics& metrics, bool completed);

}  // namespace spr

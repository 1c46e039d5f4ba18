#pragma once

#include <functional>

#include "model.hpp"

namespace spr {

struct DynamicsMatrices {
  MatX M;
  MatX C;
  VecX g;
};

MatX mass_matrix(const RobotModel& model, const VecX& theta);
MatX coriolis_matrix(const RobotModel& model, const VecX& theta, const VecX& theta_dot);
VecX gravity_vector(const RobotModel& model, const VecX& theta);
DynamicsMatrices dynamics_matrices(const RobotModel& model, const VecX& theta,
                                   const VecX& theta_dot);

/// Generalized task-space moment n = M qdd + C qd + g - n_d (the disturbance
/// n_d assists the actuators).
VecX generalized_force(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                       const VecX& theta_ddot, const VecX& n_d = VecX());

/// Actuator torques solving J_w^T tau = M qdd + C qd + g - n_d.
/// Throws SingularConfiguration when cond(J_w) >= 1e8.
VecX inverse_dynamics(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                      const VecX& theta_ddot, const VecX& n_d = VecX());

/// theta_ddot = M^-1 (J_w^T tau + n_d - C qd - g).
VecX forward_dynamics(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                      const VecX& tau, const VecX& n_d = VecX());

double kinetic_energy(const RobotModel& model, const VecX& theta, const VecX& theta_dot);
double potential_energy(const RobotModel& model, const VecX& theta);

/// Torque policy for integration: tau(t, theta, theta_dot).
using TorquePolicy = std::function<VecX(double, const VecX&, const VecX&)>;

struct IntegratedTrajectory {
  std::vector<double> t;
  std::vector<VecX> theta;
  std::vector<VecX> theta_dot;
  bool completed = true;       // false when halted mid-run
  std::string halt_reason;
};

/// Classical fixed-step RK4 on the forward dynamics. A WorkspaceViolation or
/// SingularConfiguration mid-run halts with the partial trace recorded.
IntegratedTrajectory integrate_rk4(const RobotModel& model, const VecX& theta0,
                                   const VecX& theta_dot0, const TorquePolicy& policy,
                                   double dt, double duration);

}  // namespace spr

#include "dynamics.hpp"

#include "errors.hpp"

namespace spr {

namespace {
constexpr double kJacobianCondLimit = 1e8;

MatX world_pivot_inertia(const BodyInertia& b, const Mat3& r) {
  return r * b.i_pivot_body() * r.transpose();
}
}  // namespace

MatX mass_matrix(const RobotModel& model, const VecX& theta) {
  const auto kin = model.eval_kinematics(theta, VecX::Zero(theta.size()));
  const auto& bodies = model.bodies();
  MatX m = MatX::Zero(model.dof(), model.dof());
  for (int i = 0; i < model.body_count(); ++i) {
    const Mat3 inertia = world_pivot_inertia(bodies[i], kin.body[i].R);
    m += kin.body[i].Jw.transpose() * inertia * kin.body[i].Jw;
  }
  return m;
}

MatX coriolis_matrix(const RobotModel& model, const VecX& theta, const VecX& theta_dot) {
  const auto kin = model.eval_kinematics(theta, theta_dot);
  const auto& bodies = model.bodies();
  MatX c = MatX::Zero(model.dof(), model.dof());
  for (int i = 0; i < model.body_count(); ++i) {
    const auto& bk = kin.body[i];
    const Mat3 inertia = world_pivot_inertia(bodies[i], bk.R);
    const Vec3 omega = bk.Jw * theta_dot;
    c += bk.Jw.transpose() * (inertia * bk.Jw_dot + skew(omega) * inertia * bk.Jw);
  }
  return c;
}

VecX gravity_vector(const RobotModel& model, const VecX& theta) {
  const auto kin = model.eval_kinematics(theta, VecX::Zero(theta.size()));
  const auto& bodies = model.bodies();
  VecX g = VecX::Zero(model.dof());
  for (int i = 0; i < model.body_count(); ++i) {
    const auto& bk = kin.body[i];
    g -= bodies[i].mass * bk.Jw.transpose() *
         (bk.R * skew(bodies[i].cm_body) * bk.R.transpose()) * model.gravity();
  }
  return g;
}

DynamicsMatrices dynamics_matrices(const RobotModel& model, const VecX& theta,
                                   const VecX& theta_dot) {
  const auto kin = model.eval_kinematics(theta, theta_dot);
  const auto& bodies = model.bodies();
  const int m = model.dof();
  DynamicsMatrices d{MatX::Zero(m, m), MatX::Zero(m, m), VecX::Zero(m)};
  for (int i = 0; i < model.body_count(); ++i) {
    const auto& bk = kin.body[i];
    const Mat3 inertia = world_pivot_inertia(bodies[i], bk.R);
    const Vec3 omega = bk.Jw * theta_dot;
    d.M += bk.Jw.transpose() * inertia * bk.Jw;
    d.C += bk.Jw.transpose() * (inertia * bk.Jw_dot + skew(omega) * inertia * bk.Jw);
    d.g -= bodies[i].mass * bk.Jw.transpose() *
           (bk.R * skew(bodies[i].cm_body) * bk.R.transpose()) * model.gravity();
  }
  return d;
}

VecX generalized_force(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                       const VecX& theta_ddot, const VecX& n_d) {
  const auto d = dynamics_matrices(model, theta, theta_dot);
  VecX n = d.M * theta_ddot + d.C * theta_dot + d.g;
  if (n_d.size() > 0) n -= n_d;
  return n;
}

VecX inverse_dynamics(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                      const VecX& theta_ddot, const VecX& n_d) {
  const auto kin = model.eval_kinematics(theta, theta_dot);
  const VecX n = generalized_force(model, theta, theta_dot, theta_ddot, n_d);
  Eigen::JacobiSVD<MatX> svd(kin.J_actuator, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < kJacobianCondLimit))
    throw SingularConfiguration("inverse dynamics: actuator Jacobian condition number " +
                                std::to_string(cond));
  return kin.J_actuator.transpose().partialPivLu().solve(n);
}

VecX forward_dynamics(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                      const VecX& tau, const VecX& n_d) {
  const auto kin = model.eval_kinematics(theta, theta_dot);
  const auto d = dynamics_matrices(model, theta, theta_dot);
  VecX rhs = kin.J_actuator.transpose() * tau - d.C * theta_dot - d.g;
  if (n_d.size() > 0) rhs += n_d;
  return d.M.ldlt().solve(rhs);
}

double kinetic_energy(const RobotModel& model, const VecX& theta, const VecX& theta_dot) {
  const auto kin = model.eval_kinematics(theta, theta_dot);
  const auto& bodies = model.bodies();
  double t = 0.0;
  for (int i = 0; i < model.body_count(); ++i) {
    const auto& bk = kin.body[i];
    const Vec3 omega = bk.Jw * theta_dot;
    t += 0.5 * omega.dot(world_pivot_inertia(bodies[i], bk.R) * omega);
  }
  return t;
}

double potential_energy(const RobotModel& model, const VecX& theta) {
  const auto rot = model.body_rotations(theta);
  const auto& bodies = model.bodies();
  double v = 0.0;
  for (int i = 0; i < model.body_count(); ++i)
    v -= bodies[i].mass * model.gravity().dot(rot[i] * bodies[i].cm_body);
  return v;
}

IntegratedTrajectory integrate_rk4(const RobotModel& model, const VecX& theta0,
                                   const VecX& theta_dot0, const TorquePolicy& policy,
                                   double dt, double duration) {
  if (!(dt > 0.0)) throw ConfigError("integrate_rk4: dt must be positive");
  const int m = model.dof();
  const int steps = static_cast<int>(std::llround(duration / dt));

  IntegratedTrajectory out;
  out.t.reserve(steps + 1);
  out.theta.reserve(steps + 1);
  out.theta_dot.reserve(steps + 1);

  VecX q = theta0, qd = theta_dot0;
  out.t.push_back(0.0);
  out.theta.push_back(q);
  out.theta_dot.push_back(qd);

  auto accel = [&](double t, const VecX& q_, const VecX& qd_) {
    return forward_dynamics(model, q_, qd_, policy(t, q_, qd_));
  };

  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    try {
      const VecX a1 = accel(t, q, qd);
      const VecX a2 = accel(t + 0.5 * dt, q + 0.5 * dt * qd, qd + 0.5 * dt * a1);
      const VecX a3 = accel(t + 0.5 * dt, (q + 0.5 * dt * qd + 0.25 * dt * dt * a1).eval(),
                            qd + 0.5 * dt * a2);
      const VecX a4 = accel(t + dt, (q + dt * qd + 0.5 * dt * dt * a2).eval(), qd + dt * a3);
      q += dt * qd + dt * dt / 6.0 * (a1 + a2 + a3);
      qd += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    } catch (const std::runtime_error& err) {
      out.completed = false;
      out.halt_reason = err.what();
      return out;
    }
    out.t.push_back((k + 1) * dt);
    out.theta.push_back(q);
    out.theta_dot.push_back(qd);
  }
  return out;
}

}  // namespace spr

#include "trajectory.hpp"

#include <cmath>

#include "errors.hpp"

namespace spr {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> sample_times(double duration, double rate_hz) {
  if (duration <= 0.0) throw ConfigError("trajectory: duration must be positive");
  if (rate_hz <= 0.0) throw ConfigError("trajectory: sample rate must be positive");
  const int n = static_cast<int>(std::llround(duration * rate_hz));
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = duration * static_cast<double>(i) / n;
  return t;
}
}  // namespace

Trajectory cubic_trajectory(const VecX& theta0, const VecX& thetaf, double duration,
                            double rate_hz) {
  if (theta0.size() != thetaf.size()) {
    throw DimensionMismatch("cubic_trajectory: endpoint dimensions differ");
  }
  Trajectory traj;
  traj.kind = "cubic";
  traj.t = sample_times(duration, rate_hz);
  const VecX delta = thetaf - theta0;
  for (double t : traj.t) {
    const double s = t / duration;
    traj.theta.push_back(theta0 + (3.0 * s * s - 2.0 * s * s * s) * delta);
    traj.theta_dot.push_back((6.0 * s - 6.0 * s * s) / duration * delta);
    traj.theta_ddot.push_back((6.0 - 12.0 * s) / (duration * duration) * delta);
  }
  return traj;
}

Trajectory multisine_trajectory(const VecX& center, const MatX& amplitudes,
                                const MatX& frequencies, const MatX& phases, double duration,
                                double rate_hz, const RobotModel* model) {
  const Eigen::Index m = center.size();
  if (amplitudes.rows() != m || frequencies.rows() != m || phases.rows() != m ||
      amplitudes.cols() != frequencies.cols() || amplitudes.cols() != phases.cols()) {
    throw DimensionMismatch("multisine_trajectory: component matrix shapes disagree");
  }
  Trajectory traj;
  traj.kind = "multisine";
  traj.t = sample_times(duration, rate_hz);
  for (double t : traj.t) {
    VecX th = center;
    VecX thd = VecX::Zero(m);
    VecX thdd = VecX::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < amplitudes.cols(); ++j) {
        const double w = kTwoPi * frequencies(i, j);
        const double arg = w * t + phases(i, j);
        th(i) += amplitudes(i, j) * std::sin(arg);
        thd(i) += amplitudes(i, j) * w * std::cos(arg);
        thdd(i) -= amplitudes(i, j) * w * w * std::sin(arg);
      }
    }
    if (model != nullptr && !model->in_workspace(th)) {
      throw WorkspaceViolation("multisine_trajectory: sample at t=" + std::to_string(t) +
                               " leaves the workspace");
    }
    traj.theta.push_back(std::move(th));
    traj.theta_dot.push_back(std::move(thd));
    traj.theta_ddot.push_back(std::move(thdd));
  }
  return traj;
}

ReferenceSignals reference_signals(const VecX& theta_d, const VecX& theta_d_dot,
                                   const VecX& theta_d_ddot, const VecX& theta,
                                   const VecX& theta_dot, const MatX& lambda) {
  ReferenceSignals ref;
  ref.e = theta - theta_d;
  ref.e_dot = theta_dot - theta_d_dot;
  ref.theta_r_dot = theta_d_dot - lambda * ref.e;
  ref.theta_r_ddot = theta_d_ddot - lambda * ref.e_dot;
  ref.s = ref.e_dot + lambda * ref.e;
  return ref;
}

}  // namespace spr

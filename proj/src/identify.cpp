#include "identify.hpp"

#include <cmath>
#include <limits>

#include "dynamics.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace spr {

namespace {
/// Deterministic standard normal (Box-Muller on the portable uniform).
double gaussian(std::mt19937_64& rng) {
  double u1 = uniform(rng, 0.0, 1.0);
  while (u1 <= 0.0) u1 = uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}
}  // namespace

MeasurementSet synthesize_measurements(const RobotModel& model, const Trajectory& trajectory,
                                       const ReductionMap& map, double noise_sigma,
                                       std::uint64_t seed) {
  const int m = model.dof();
  const int n = trajectory.samples();
  MeasurementSet set;
  set.noise_sigma = noise_sigma;
  set.seed = seed;
  set.W_r = MatX::Zero(n * m, map.p);
  set.n_meas = VecX::Zero(n * m);

  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    const VecX& th = trajectory.theta[i];
    const VecX& thd = trajectory.theta_dot[i];
    const VecX& thdd = trajectory.theta_ddot[i];
    const VecX tau = inverse_dynamics(model, th, thd, thdd);
    const KinematicsEval kin = model.eval_kinematics(th, thd);
    VecX n_i = kin.J_actuator.transpose() * tau;
    for (int c = 0; c < m; ++c) n_i(c) += noise_sigma * gaussian(rng);
    set.n_meas.segment(i * m, m) = n_i;
    set.W_r.middleRows(i * m, m) =
        reduce_regressor(linear_regressor(model, th, thd, thdd), map);
  }
  return set;
}

LeastSquaresResult solve_base_params(const MatX& w_r, const VecX& n_meas) {
  if (w_r.rows() != n_meas.size()) {
    throw DimensionMismatch("solve_base_params: row count mismatch");
  }
  if (w_r.rows() < w_r.cols()) {
    throw InsufficientSamples("solve_base_params: fewer rows than base parameters");
  }
  Eigen::BDCSVD<MatX> svd(w_r);
  const double smin = svd.singularValues().tail(1)(0);
  const double smax = svd.singularValues()(0);
  const double cond = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (cond > 1e10) {
    throw RankDeficient("solve_base_params: condition number " + std::to_string(cond));
  }
  LeastSquaresResult result;
  result.condition_number = cond;
  result.pi_r_hat = w_r.colPivHouseholderQr().solve(n_meas);
  result.residual_norm = (w_r * result.pi_r_hat - n_meas).norm();
  return result;
}

RecoveryReport recovery_report(const LeastSquaresResult& solution, const RobotModel& model,
                               const ReductionMap& map) {
  RecoveryReport report;
  report.robot = model.name();
  report.residual_norm = solution.residual_norm;
  report.condition_number = solution.condition_number;

  const VecX pi_true = reduce_pi(assemble_pi(model), map);
  // Denominator floor keeps numerically-zero base parameters (true value at
  // roundoff level) from dominating the relative errors.
  const double floor = std::max(1e-12, 1e-3 * pi_true.cwiseAbs().maxCoeff());
  for (int i = 0; i < map.p; ++i) {
    RecoveryEntry e;
    e.index = i;
    e.true_value = pi_true(i);
    e.estimate = solution.pi_r_hat(i);
    e.rel_error = std::abs(e.estimate - e.true_value) /
                  std::max(floor, std::abs(e.true_value));
    report.max_rel_error = std::max(report.max_rel_error, e.rel_error);
    report.entries.push_back(e);
  }
  return report;
}

std::string recovery_to_json(const RecoveryReport& report) {
  nlohmann::json j;
  j["robot"] = report.robot;
  j["max_rel_error"] = report.max_rel_error;
  j["residual_norm"] = report.residual_norm;
  j["condition_number"] = report.condition_number;
  j["noise_sigma"] = report.noise_sigma;
  j["seed"] = report.seed;
  j["base_parameters"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    j["base_parameters"].push_back({{"index", e.index},
                                    {"true", e.true_value},
                                    {"estimate", e.estimate},
                                    {"rel_error", e.rel_error}});
  }
  return j.dump(2);
}

Trajectory default_excitation(const RobotModel& model) {
  const double deg = M_PI / 180.0;
  if (model.name() == "diamond") {
    VecX center(2);
    center << M_PI, 45.0 * deg;
    MatX amp(2, 2), freq(2, 2), phase(2, 2);
    amp << 0.8, 0.5, 0.25, 0.15;
    freq << 0.7, 1.3, 0.9, 1.7;
    phase << 0.0, 1.0, 0.5, 2.0;
    return multisine_trajectory(center, amp, freq, phase, 2.0, 1000.0, &model);
  }
  if (model.name() == "3rrr") {
    const VecX center = VecX::Zero(3);
    MatX amp(3, 2), freq(3, 2), phase(3, 2);
    amp << 0.15, 0.10, 0.12, 0.08, 0.14, 0.09;
    freq << 0.6, 1.4, 0.8, 1.9, 1.1, 1.6;
    phase << 0.0, 0.7, 1.3, 2.1, 0.4, 2.8;
    return multisine_trajectory(center, amp, freq, phase, 2.0, 1000.0, &model);
  }
  const VecX lo = model.workspace_lower();
  const VecX hi = model.workspace_upper();
  const VecX center = 0.5 * (lo + hi);
  const Eigen::Index m = center.size();
  MatX amp(m, 2), freq(m, 2), phase(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double span = hi(i) - lo(i);
    amp(i, 0) = 0.15 * span;
    amp(i, 1) = 0.10 * span;
    freq(i, 0) = 0.6 + 0.2 * static_cast<double>(i);
    freq(i, 1) = 1.3 + 0.3 * static_cast<double>(i);
    phase(i, 0) = 0.3 * static_cast<double>(i);
    phase(i, 1) = 1.1 + 0.5 * static_cast<double>(i);
  }
  return multisine_trajectory(center, amp, freq, phase, 2.0, 1000.0, &model);
}

}  // namespace spr

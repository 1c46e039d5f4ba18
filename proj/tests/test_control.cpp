#include "doctest.h"

#include "control.hpp"
#include "diamond.hpp"
#include "dynamics.hpp"
#include "identify.hpp"
#include "oracle.hpp"
#include "rrr3.hpp"

using namespace spr;

namespace {
MatX diag(int n, double v) { return v * MatX::Identity(n, n); }
}  // namespace

TEST_CASE("exact-model computed torque tracks the default trajectories") {
  const DiamondModel diamond(DiamondModel::default_geometry());
  const Rrr3Model rrr3(Rrr3Model::default_geometry());
  for (const RobotModel* model : {static_cast<const RobotModel*>(&diamond),
                                  static_cast<const RobotModel*>(&rrr3)}) {
    const int n = model->dof();
    const Trajectory desired = default_verification_trajectory(*model);
    const ControlRun run = simulate_idc(*model, desired, diag(n, 100.0), diag(n, 20.0));
    REQUIRE(run.completed);
    const RunMetrics m = run_metrics(run);
    CHECK(m.terminal_error < 1e-4);
    CHECK(m.rmse < 1e-4);
  }
}

TEST_CASE("model mismatch degrades tracking") {
  const DiamondModel model(DiamondModel::default_geometry());
  const Trajectory desired = default_verification_trajectory(model);
  const ControlRun exact = simulate_idc(model, desired, diag(2, 100.0), diag(2, 20.0));
  const ControlRun off = simulate_idc(model, desired, diag(2, 100.0), diag(2, 20.0), 1.2);
  REQUIRE(exact.completed);
  REQUIRE(off.completed);
  CHECK(run_metrics(off).terminal_error > 5.0 * run_metrics(exact).terminal_error);
}

TEST_CASE("zero gains and zero gravity hold a constant setpoint") {
  const DiamondModel base(DiamondModel::default_geometry());
  const auto model = base.clone_with_gravity(Vec3::Zero());
  const VecX pose = (VecX(2) << 0.3, 0.8).finished();
  const Trajectory desired = cubic_trajectory(pose, pose, 0.5);
  const ControlRun run = simulate_idc(*model, desired, diag(2, 0.0), diag(2, 0.0));
  REQUIRE(run.completed);
  CHECK(run_metrics(run).terminal_error < 1e-12);
  CHECK(run_metrics(run).torque_peak < 1e-12);
}

TEST_CASE("adaptive control with true parameters tracks immediately") {
  const DiamondModel model(DiamondModel::default_geometry());
  const Trajectory desired = default_verification_trajectory(model);
  const ControlRun run = simulate_slotine_li(model, desired, diag(2, 1.0), diag(2, 5.0),
                                             diag(36, 0.1), assemble_pi(model));
  REQUIRE(run.completed);
  CHECK(run_metrics(run).terminal_error < 1e-3);
}

TEST_CASE("adaptation improves tracking over time") {
  // Periodic excitation, parameters started at half their true values: the
  // error norm over the fifth second must beat the first.
  const DiamondModel model(DiamondModel::default_geometry());
  const Trajectory desired = default_excitation(model);  // 2 s multisine
  const ControlRun run = simulate_slotine_li(model, desired, diag(2, 1.0), diag(2, 5.0),
                                             diag(36, 0.1), 0.5 * assemble_pi(model));
  REQUIRE(run.completed);
  const std::size_t n = run.e.size();
  double early = 0.0, late = 0.0;
  for (std::size_t i = 0; i < n / 4; ++i) early += run.e[i].squaredNorm();
  for (std::size_t i = 3 * n / 4; i < n; ++i) late += run.e[i].squaredNorm();
  CHECK(late < early);
}

TEST_CASE("full and reduced adaptive runs produce the same torque trace") {
  const DiamondModel diamond(DiamondModel::default_geometry());
  const Rrr3Model rrr3(Rrr3Model::default_geometry());
  for (const RobotModel* model : {static_cast<const RobotModel*>(&diamond),
                                  static_cast<const RobotModel*>(&rrr3)}) {
    const int n = model->dof();
    const int cols = 9 * model->body_count();
    const int min_samples = (cols + n - 1) / n;
    const ReductionMap map =
        reduction_map(observation_matrix(*model, min_samples + 30, 1001, true).W);
    const Trajectory desired = default_verification_trajectory(*model);
    const VecX pi0 = 0.5 * assemble_pi(*model);
    const ControlRun full = simulate_slotine_li(*model, desired, diag(n, 1.0),
                                                diag(n, 5.0), diag(cols, 0.1), pi0);
    const ControlRun reduced = simulate_slotine_li(*model, desired, diag(n, 1.0),
                                                   diag(n, 5.0), diag(cols, 0.1), pi0, &map);
    REQUIRE(full.completed);
    REQUIRE(reduced.completed);
    REQUIRE(full.tau.size() == reduced.tau.size());
    double max_diff = 0.0;
    for (std::size_t i = 0; i < full.tau.size(); ++i)
      max_diff = std::max(max_diff, (full.tau[i] - reduced.tau[i]).cwiseAbs().maxCoeff());
    CHECK(max_diff < 1e-8);
  }
}

TEST_CASE("Lyapunov function is non-increasing along an adaptive run") {
  // V = 0.5 s' M s + 0.5 pi_err' Gamma^-1 pi_err, checked discretely with a
  // small slack for the sampling of a continuous argument.
  const DiamondModel model(DiamondModel::default_geometry());
  const Trajectory desired = default_excitation(model);
  const double gamma = 0.1;
  const VecX pi_true = assemble_pi(model);
  const ControlRun run = simulate_slotine_li(model, desired, diag(2, 1.0), diag(2, 5.0),
                                             diag(36, gamma), 0.5 * pi_true);
  REQUIRE(run.completed);
  REQUIRE(run.pi_hat.size() == run.t.size());
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < run.t.size(); i += 10) {
    const MatX m = mass_matrix(model, run.theta[i]);
    const VecX err = run.pi_hat[i] - pi_true;
    const double v = 0.5 * run.s[i].dot(m * run.s[i]) + 0.5 * err.squaredNorm() / gamma;
    CHECK(v <= prev + 1e-6);
    prev = v;
  }
}

TEST_CASE("metrics and serialization") {
  ControlRun run;
  run.t = {0.0, 0.001};
  run.e = {(VecX(2) << 0.0, 0.0).finished(), (VecX(2) << 3e-5, 4e-5).finished()};
  run.theta = run.e;
  run.theta_dot = run.e;
  run.s = run.e;
  run.tau = {(VecX(2) << 1.0, -2.0).finished(), (VecX(2) << 0.5, 0.25).finished()};
  const RunMetrics m = run_metrics(run);
  CHECK(m.terminal_error == doctest::Approx(5e-5));
  CHECK(m.torque_peak == doctest::Approx(2.0));
  const std::string json = metrics_to_json(m, true);
  CHECK(json.find("terminal_error") != std::string::npos);
  CHECK(json.find("torque_peak") != std::string::npos);
}

TEST_CASE("an unstable gain records a halted run instead of throwing") {
  const DiamondModel model(DiamondModel::default_geometry());
  const Trajectory desired = default_verification_trajectory(model);
  const ControlRun run = simulate_slotine_li(model, desired, diag(2, 5000.0), diag(2, 5.0),
                                             diag(36, 0.1), 0.5 * assemble_pi(model));
  CHECK_FALSE(run.completed);
  CHECK_FALSE(run.halt_reason.empty());
}

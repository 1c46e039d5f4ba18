#include "doctest.h"

#include "diamond.hpp"
#include "dynamics.hpp"
#include "oracle.hpp"
#include "rrr3.hpp"

using namespace spr;

namespace {
/// Wraps a model but corrupts one body's angular Jacobian, for exercising
/// the FD cross-check's failure path.
class CorruptedJacobian final : public RobotModel {
 public:
  explicit CorruptedJacobian(const RobotModel& inner) : inner_(inner.clone_with_gravity(inner.gravity())) {}

  const std::string& name() const override { return inner_->name(); }
  int dof() const override { return inner_->dof(); }
  int actuators() const override { return inner_->actuators(); }
  const Vec3& gravity() const override { return inner_->gravity(); }
  const std::vector<BodyInertia>& bodies() const override { return inner_->bodies(); }
  std::vector<Mat3> body_rotations(const VecX& theta) const override {
    return inner_->body_rotations(theta);
  }
  bool in_workspace(const VecX& theta) const override { return inner_->in_workspace(theta); }
  VecX workspace_lower() const override { return inner_->workspace_lower(); }
  VecX workspace_upper() const override { return inner_->workspace_upper(); }
  std::unique_ptr<RobotModel> clone_with_gravity(const Vec3& g) const override {
    return inner_->clone_with_gravity(g);
  }
  KinematicsEval eval_kinematics(const VecX& theta, const VecX& theta_dot) const override {
    KinematicsEval kin = inner_->eval_kinematics(theta, theta_dot);
    kin.body[1].Jw(0, 0) += 1e-3;
    return kin;
  }

 private:
  std::unique_ptr<RobotModel> inner_;
};
}  // namespace

TEST_CASE("FD angular map matches the analytic Jacobian") {
  const Rrr3Model model(Rrr3Model::default_geometry());
  const VecX th = (VecX(3) << 0.1, -0.15, 0.2).finished();
  const auto kin = model.eval_kinematics(th, VecX::Zero(3));
  for (int b = 0; b < model.body_count(); ++b) {
    CHECK((fd_body_angular_map(model, b, th) - kin.body[b].Jw).cwiseAbs().maxCoeff() <
          1e-7);
  }
}

TEST_CASE("Jacobian cross-check passes and reports its inputs") {
  const DiamondModel model(DiamondModel::default_geometry());
  const CheckResult r = fd_jacobian_check(model, 25, 77);
  CHECK(r.pass);
  CHECK(r.sample_count == 25);
  CHECK(r.seed == 77);
  CHECK(r.max_err < r.tolerance);
}

TEST_CASE("Jacobian cross-check catches a corrupted Jacobian") {
  const DiamondModel inner(DiamondModel::default_geometry());
  const CorruptedJacobian model(inner);
  const CheckResult r = fd_jacobian_check(model, 10, 77);
  CHECK_FALSE(r.pass);
  CHECK(r.max_err > 1e-4);
}

TEST_CASE("Lagrangian oracle agrees along the default trajectories") {
  const DiamondModel diamond(DiamondModel::default_geometry());
  const Rrr3Model rrr3(Rrr3Model::default_geometry());
  for (const RobotModel* model : {static_cast<const RobotModel*>(&diamond),
                                  static_cast<const RobotModel*>(&rrr3)}) {
    const Trajectory traj = default_verification_trajectory(*model);
    const CheckResult r = lagrange_oracle_check(*model, traj);
    CHECK(r.pass);
    CHECK(r.max_err < 1e-5);
  }
}

TEST_CASE("Lagrangian oracle on a static pose reduces to gravity") {
  const DiamondModel model(DiamondModel::default_geometry());
  const VecX pose = (VecX(2) << 0.4, 50.0 * M_PI / 180.0).finished();
  Trajectory still;
  still.kind = "static";
  for (int i = 0; i <= 100; ++i) {
    still.t.push_back(1e-3 * i);
    still.theta.push_back(pose);
    still.theta_dot.push_back(VecX::Zero(2));
    still.theta_ddot.push_back(VecX::Zero(2));
  }
  const CheckResult r = lagrange_oracle_check(model, still, 1e-5, 1);
  CHECK(r.pass);
  // And the explicit side of that comparison is pure gravity here.
  const VecX n = generalized_force(model, pose, VecX::Zero(2), VecX::Zero(2));
  CHECK((n - gravity_vector(model, pose)).norm() < 1e-15);
}

TEST_CASE("property suite passes for both robots") {
  PropertyConfig cfg;
  cfg.regressor_samples = 20;
  cfg.mass_scan_samples = 100;
  cfg.jacobian_samples = 20;
  cfg.antisymmetry_samples = 20;
  const DiamondModel diamond(DiamondModel::default_geometry());
  const Rrr3Model rrr3(Rrr3Model::default_geometry());
  for (const RobotModel* model : {static_cast<const RobotModel*>(&diamond),
                                  static_cast<const RobotModel*>(&rrr3)}) {
    const VerificationReport report = property_suite(*model, cfg);
    CHECK(report.all_pass());
    CHECK(report.robot == model->name());
    CHECK(report.checks.size() == 10);
  }
}

TEST_CASE("property suite is deterministic in the seed") {
  const DiamondModel model(DiamondModel::default_geometry());
  PropertyConfig cfg;
  cfg.regressor_samples = 10;
  cfg.mass_scan_samples = 50;
  cfg.jacobian_samples = 10;
  cfg.antisymmetry_samples = 10;
  cfg.seed = 9;
  const VerificationReport a = property_suite(model, cfg);
  const VerificationReport b = property_suite(model, cfg);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].max_err == b.checks[i].max_err);
  }
}

TEST_CASE("report JSON round trip") {
  VerificationReport report;
  report.robot = "diamond";
  report.timestamp = "2026-01-02T03:04:05Z";
  report.checks.push_back({"mass-positive-definite", -0.006, 0.0, true, 100, 1, ""});
  report.checks.push_back({"lagrange-oracle", 2.7e-7, 1e-5, true, 101, 1, "stride 10"});
  const VerificationReport back = report_from_json(report_to_json(report));
  CHECK(back.robot == report.robot);
  CHECK(back.timestamp == report.timestamp);
  REQUIRE(back.checks.size() == 2);
  CHECK(back.checks[0].name == "mass-positive-definite");
  CHECK(back.checks[0].max_err == report.checks[0].max_err);
  CHECK(back.checks[1].note == "stride 10");
  CHECK(back.all_pass());
}

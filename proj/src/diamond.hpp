#pragma once

#include "model.hpp"

namespace spr {

/// ARAS-Diamond (2-DOF 5R) geometry: two angular link lengths plus the
/// four link inertias in the canonical order link1..link4.
struct DiamondGeometry {
  double alpha = 0.0;  // proximal angular length, rad
  double beta = 0.0;   // distal angular length, rad
  std::vector<BodyInertia> links;  // size 4
  Vec3 gravity = {0.0, 0.0, -9.81};

  double gamma_min = 5.0 * M_PI / 180.0;
  double gamma_max = 85.0 * M_PI / 180.0;
};

/// IK solution and derived pose quantities at one (phi, gamma).
struct DiamondPose {
  double phi, gamma;
  double q1, q2;
  double angle_a;  // interior angle at vertex a (q1 = phi + angle_a)
  double angle_b;  // interior angle at vertex b (passive)
  Vec3 a_hat, b_hat, c_hat, d_hat;
};

/// Inverse kinematics. Throws UnreachablePose / SingularConfiguration.
DiamondPose diamond_ik(const DiamondGeometry& g, double phi, double gamma);

/// dq1/dgamma (= -dq2/dgamma).
double diamond_h(const DiamondGeometry& g, const DiamondPose& p);

/// d(angle_b)/dgamma, so that angle_b_dot = s * gamma_dot.
double diamond_s(const DiamondGeometry& g, const DiamondPose& p);

/// dh/dgamma, so that h_dot = c * gamma_dot.
double diamond_c(const DiamondGeometry& g, const DiamondPose& p);

/// ds/dt along gamma_dot.
double diamond_s_dot(const DiamondGeometry& g, const DiamondPose& p, double gamma_dot);

class DiamondModel final : public RobotModel {
 public:
  explicit DiamondModel(DiamondGeometry geometry);

  static DiamondGeometry default_geometry();  // parameters of the physical prototype

  const std::string& name() const override { return name_; }
  int dof() const override { return 2; }
  int actuators() const override { return 2; }
  const Vec3& gravity() const override { return geom_.gravity; }
  const std::vector<BodyInertia>& bodies() const override { return geom_.links; }

  KinematicsEval eval_kinematics(const VecX& theta, const VecX& theta_dot) const override;
  std::vector<Mat3> body_rotations(const VecX& theta) const override;

  bool in_workspace(const VecX& theta) const override;
  VecX workspace_lower() const override;
  VecX workspace_upper() const override;

  std::unique_ptr<RobotModel> clone_with_gravity(const Vec3& g) const override {
    DiamondGeometry geom = geom_;
    geom.gravity = g;
    return std::make_unique<DiamondModel>(std::move(geom));
  }

  const DiamondGeometry& geometry() const { return geom_; }

 private:
  DiamondGeometry geom_;
  std::string name_ = "diamond";
};

}  // namespace spr

#pragma once

#include <array>

#include "model.hpp"

namespace spr {

/// 3-RRR spherical manipulator geometry. Body order: platform,
/// proximal 1..3, distal 1..3.
struct Rrr3Geometry {
  std::array<double, 3> lambda{};   // base leg placement angles, rad
  std::array<double, 3> eta{};      // platform leg placement angles, rad
  double gamma_base = 0.0;          // base pyramid angle
  double beta_plat = 0.0;           // platform pyramid angle
  std::array<double, 3> alpha1{};   // proximal angular lengths
  std::array<double, 3> alpha2{};   // distal angular lengths
  std::array<int, 3> branch{1, 1, 1};  // IK elbow sign per leg
  std::vector<BodyInertia> bodies;  // size 7
  Vec3 gravity = {0.0, 0.0, -9.81};

  double euler_bound = 30.0 * M_PI / 180.0;  // workspace box half-width
};

/// Per-leg unit vectors and closure scalars at one pose.
struct Rrr3Pose {
  Eigen::Vector3d theta;
  std::array<double, 3> q{};
  Mat3 R_p;
  std::array<Vec3, 3> u_hat, w_hat, v_hat, v_star;
  std::array<Vec3, 3> p1, p2;
  std::array<double, 3> h{};
};

class Rrr3Model final : public RobotModel {
 public:
  explicit Rrr3Model(Rrr3Geometry geometry);

  static Rrr3Geometry default_geometry();  // parameters of the reference design

  const std::string& name() const override { return name_; }
  int dof() const override { return 3; }
  int actuators() const override { return 3; }
  const Vec3& gravity() const override { return geom_.gravity; }
  const std::vector<BodyInertia>& bodies() const override { return geom_.bodies; }

  KinematicsEval eval_kinematics(const VecX& theta, const VecX& theta_dot) const override;
  std::vector<Mat3> body_rotations(const VecX& theta) const override;

  bool in_workspace(const VecX& theta) const override;
  VecX workspace_lower() const override;
  VecX workspace_upper() const override;

  /// Closure-based IK: solves w_i(q_i) . v_i(theta) = cos(alpha2_i) per leg.
  /// With prev_q set, legs are continuity-checked against it (BranchJump if
  /// any leg moves by more than pi/2).
  std::array<double, 3> ik(const VecX& theta, const std::array<double, 3>* prev_q = nullptr) const;

  /// Full pose (unit vectors, closure scalars) at theta.
  Rrr3Pose pose(const VecX& theta) const;

  std::unique_ptr<RobotModel> clone_with_gravity(const Vec3& g) const override {
    Rrr3Geometry geom = geom_;
    geom.gravity = g;
    return std::make_unique<Rrr3Model>(std::move(geom));
  }

  const Rrr3Geometry& geometry() const { return geom_; }

 private:
  Mat3 base_frame(int leg) const;  // Rz(lambda_i) Rx(gamma - pi)
  double distal_psi(int leg, double q, const Vec3& v_hat) const;

  Rrr3Geometry geom_;
  std::string name_ = "3rrr";
};

}  // namespace spr

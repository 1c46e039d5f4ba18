#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "spatial.hpp"

namespace spr {

/// Task-space configuration and derivatives. Reference signals are optional
/// and only used by the Slotine-Li paths.
struct TaskState {
  VecX theta;
  VecX theta_dot;
  VecX theta_ddot;
  VecX theta_r_dot;
  VecX theta_r_ddot;
};

/// Rotation, angular Jacobian and its time derivative for one body.
struct BodyKinematics {
  Mat3 R;        // body -> base
  MatX Jw;       // 3 x m, maps theta_dot to world angular velocity
  MatX Jw_dot;   // 3 x m
};

/// Per-body inertial data. Frames are the link frames fixed by each robot
/// model; cm is measured from the pivot (CR), inertia about the CG.
struct BodyInertia {
  std::string name;
  double mass = 0.0;
  Vec3 cm_body = Vec3::Zero();
  Mat3 i_cg_body = Mat3::Zero();

  Mat3 i_pivot_body() const { return parallel_axis_to_pivot(i_cg_body, mass, cm_body); }
};

/// Result of a full kinematics evaluation at one state.
struct KinematicsEval {
  MatX J_actuator;                   // j x m input-output Jacobian
  std::vector<BodyKinematics> body;  // canonical body order
};

/// Robot-independent SPR contract: a body list, gravity, and a kinematics
/// evaluator. The moving platform, where distinct, is body 0 with Jw = E.
class RobotModel {
 public:
  virtual ~RobotModel() = default;

  virtual const std::string& name() const = 0;
  virtual int dof() const = 0;        // m
  virtual int actuators() const = 0;  // j (= m, fully parallel)
  int body_count() const { return static_cast<int>(bodies().size()); }

  virtual const Vec3& gravity() const = 0;
  virtual const std::vector<BodyInertia>& bodies() const = 0;

  /// Throws WorkspaceViolation / SingularConfiguration / UnreachablePose.
  virtual KinematicsEval eval_kinematics(const VecX& theta, const VecX& theta_dot) const = 0;

  /// Position-level kinematics only: body rotations as a function of theta.
  /// Kept free of the closed-form Jacobian code so finite-difference oracles
  /// can use it as an independent reference.
  virtual std::vector<Mat3> body_rotations(const VecX& theta) const = 0;

  virtual bool in_workspace(const VecX& theta) const = 0;
  virtual VecX workspace_lower() const = 0;
  virtual VecX workspace_upper() const = 0;

  /// Copy of this model with a different gravity vector (e.g. zero gravity
  /// for conservative-motion checks).
  virtual std::unique_ptr<RobotModel> clone_with_gravity(const Vec3& g) const = 0;
};

/// Stacked 9k parameter vector: per body [m * cm; vec6(I about pivot)].
VecX assemble_pi(const RobotModel& model);

/// Deterministic uniform double in [lo, hi) from raw mt19937_64 output.
/// Avoids std::uniform_real_distribution, whose stream is
/// implementation-defined.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

/// Uniform in-workspace task state with velocity and acceleration bounds.
struct StateSampler {
  const RobotModel& model;
  std::mt19937_64 rng;
  double vel_bound = 2.0;    // rad/s
  double acc_bound = 10.0;   // rad/s^2

  StateSampler(const RobotModel& m, std::uint64_t seed) : model(m), rng(seed) {}

  TaskState next();
};

}  // namespace spr

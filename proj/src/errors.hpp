#pragma once

#include <stdexcept>
#include <string>

namespace spr {

/// Task-space point lies outside the model's declared workspace.
struct WorkspaceViolation : std::runtime_error {
  explicit WorkspaceViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A kinematic denominator vanished or a Jacobian is numerically singular.
struct SingularConfiguration : std::runtime_error {
  explicit SingularConfiguration(const std::string& what) : std::runtime_error(what) {}
};

/// Inverse-kinematics closure has no real solution at the requested pose.
struct UnreachablePose : std::runtime_error {
  explicit UnreachablePose(const std::string& what) : std::runtime_error(what) {}
};

/// IK branch tracking jumped by more than the continuity threshold.
struct BranchJump : std::runtime_error {
  explicit BranchJump(const std::string& what) : std::runtime_error(what) {}
};

/// Observation matrix has too few rows for the parameter space.
struct InsufficientSamples : std::runtime_error {
  explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

/// RREF pivots ambiguous or least-squares system rank deficient.
struct RankDeficient : std::runtime_error {
  explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched operand dimensions.
struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Bad configuration file or field.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spr

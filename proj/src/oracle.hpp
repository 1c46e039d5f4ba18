#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"
#include "regressor.hpp"
#include "trajectory.hpp"

namespace spr {

struct CheckResult {
  std::string name;
  double max_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::string note;  // skip reason or context, empty when run normally
};

struct VerificationReport {
  std::string robot;
  std::string timestamp;  // ISO 8601 UTC
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

std::string report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const std::string& text);

/// Angular-velocity map of a body obtained purely from position-level
/// rotations: column i = unskew((dR/dtheta_i) R^T), central differences.
/// This is the oracle-side counterpart of Jw and never touches the
/// closed-form Jacobian code.
MatX fd_body_angular_map(const RobotModel& model, int body, const VecX& theta,
                         double step = 1e-6);

/// Compares the closed-form body Jacobians and their rates against finite
/// differences of position-level kinematics over seeded random states.
CheckResult fd_jacobian_check(const RobotModel& model, int sample_count, std::uint64_t seed,
                              double tol = 1e-5);

/// Euler-Lagrange torque from FD energies only (rotations, masses,
/// inertias), compared against the explicit M/C/g combination along a
/// trajectory. Substitutes for an external multibody simulation.
CheckResult lagrange_oracle_check(const RobotModel& model, const Trajectory& trajectory,
                                  double tol = 1e-5, int stride = 10);

/// Dual-path regressor identities: explicit vs Y*pi, Y_r*pi_r, and the
/// Slotine-Li pair with independent random reference rates.
std::vector<CheckResult> regressor_equivalence_check(const RobotModel& model,
                                                     int sample_count, std::uint64_t seed,
                                                     double tol = 1e-10);

struct PropertyConfig {
  int regressor_samples = 100;
  int mass_scan_samples = 1000;
  int jacobian_samples = 100;
  int antisymmetry_samples = 100;
  std::uint64_t seed = 1;
  double regressor_tol = 1e-10;
  double antisymmetry_tol = 1e-10;
  double jacobian_tol = 1e-5;
  double gravity_tol = 1e-8;
  double lagrange_tol = 1e-5;
  double energy_tol = 1e-8;
  // Trajectory the Lagrangian and power-balance checks run on; when empty
  // the model's default verification trajectory is used.
  const Trajectory* trajectory = nullptr;
};

/// Default verification trajectory per shipped robot (cubic blend across
/// the workspace, 1 s at 1 kHz).
Trajectory default_verification_trajectory(const RobotModel& model);

/// Full property suite: positive definiteness, Mdot-2C antisymmetry,
/// gravity gradient, energy conservation, FD Jacobians, Lagrangian oracle,
/// regressor equivalences.
VerificationReport property_suite(const RobotModel& model, const PropertyConfig& config = {});

}  // namespace spr

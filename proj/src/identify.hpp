#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regressor.hpp"
#include "trajectory.hpp"

namespace spr {

/// Stacked reduced regressor rows and matching task-space moment
/// "measurements" n = Jw^T tau (optionally noise-corrupted).
struct MeasurementSet {
  MatX W_r;     // (n*m) x p
  VecX n_meas;  // n*m
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

MeasurementSet synthesize_measurements(const RobotModel& model, const Trajectory& trajectory,
                                       const ReductionMap& map, double noise_sigma,
                                       std::uint64_t seed);

struct LeastSquaresResult {
  VecX pi_r_hat;
  double residual_norm = 0.0;
  double condition_number = 0.0;
};

/// QR-based least squares. Throws RankDeficient when cond(W_r) > 1e10.
LeastSquaresResult solve_base_params(const MatX& w_r, const VecX& n_meas);

struct RecoveryEntry {
  int index = 0;
  double true_value = 0.0;
  double estimate = 0.0;
  double rel_error = 0.0;
};

struct RecoveryReport {
  std::string robot;
  std::vector<RecoveryEntry> entries;
  double max_rel_error = 0.0;
  double residual_norm = 0.0;
  double condition_number = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

RecoveryReport recovery_report(const LeastSquaresResult& solution, const RobotModel& model,
                               const ReductionMap& map);

std::string recovery_to_json(const RecoveryReport& report);

/// Default identification excitation: an in-workspace multisine, 2 s at
/// 1 kHz, deterministic per robot.
Trajectory default_excitation(const RobotModel& model);

}  // namespace spr

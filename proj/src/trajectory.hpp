#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"

namespace spr {

/// Sampled task-space trajectory with analytic derivatives.
struct Trajectory {
  std::string kind;
  std::vector<double> t;
  std::vector<VecX> theta;
  std::vector<VecX> theta_dot;
  std::vector<VecX> theta_ddot;
  std::uint64_t seed = 0;

  int samples() const { return static_cast<int>(t.size()); }
};

/// Cubic blend theta0 -> thetaf over [0, T] with zero boundary velocities.
Trajectory cubic_trajectory(const VecX& theta0, const VecX& thetaf, double duration,
                            double rate_hz = 1000.0);

/// Sum of sinusoids per coordinate:
///   theta_i(t) = center_i + sum_j amp(i,j) * sin(2*pi*freq(i,j)*t + phase(i,j)).
/// If a model is supplied every sample is workspace-checked at generation time.
Trajectory multisine_trajectory(const VecX& center, const MatX& amplitudes,
                                const MatX& frequencies, const MatX& phases, double duration,
                                double rate_hz = 1000.0, const RobotModel* model = nullptr);

/// Composite error / reference / sliding signals for Slotine-Li evaluation.
struct ReferenceSignals {
  VecX e;            // theta - theta_d
  VecX e_dot;        // theta_dot - theta_d_dot
  VecX theta_r_dot;  // theta_d_dot - Lambda * e
  VecX theta_r_ddot; // theta_d_ddot - Lambda * e_dot
  VecX s;            // e_dot + Lambda * e
};

ReferenceSignals reference_signals(const VecX& theta_d, const VecX& theta_d_dot,
                                   const VecX& theta_d_ddot, const VecX& theta,
                                   const VecX& theta_dot, const MatX& lambda);

}  // namespace spr

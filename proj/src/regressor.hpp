#pragma once

#include <cstdint>
#include <vector>

#include "model.hpp"

namespace spr {

/// Slotine-Li regressor Y_S (m x 9k): Y_S * pi = M qdd_r + C qd_r + g.
/// Per-body block = Jw^T R [ S(g0_b) | (wr_dot~ + S(w_b) wr~) ] with all
/// angular quantities expressed in the body frame.
MatX slotine_li_regressor(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                          const VecX& theta_r_dot, const VecX& theta_r_ddot);

/// Linear regressor Y: the S-L form evaluated at qd_r = qd, qdd_r = qdd,
/// so that Y * pi = M qdd + C qd + g.
MatX linear_regressor(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                      const VecX& theta_ddot);

struct ObservationMatrix {
  MatX W;  // (j*m) x 9k
  std::vector<TaskState> samples;
  std::uint64_t seed = 0;
  bool slotine_li_rows = false;
};

/// Stacks regressors over j seeded random in-workspace states. Throws
/// InsufficientSamples when j*m < 9k.
///
/// With slotine_li_rows the S-L regressor is stacked at independent random
/// reference rates instead of the linear one. The distinction matters: the
/// S-L functional row space can be strictly larger (it is for the 3-RRR, by
/// one dimension), so a reduction map intended for reduced-S-L evaluation
/// must come from S-L rows, while torque identification needs the
/// linear-row map to keep the reduced least-squares problem full rank.
ObservationMatrix observation_matrix(const RobotModel& model, int sample_count,
                                     std::uint64_t seed, bool slotine_li_rows = false);

/// RREF-based base-parameter reduction of an observation matrix.
struct ReductionMap {
  MatX B;                  // p x 9k, exact reduced row echelon form
  MatX B_dagger;           // 9k x p, Moore-Penrose right inverse B'(BB')^-1
  int p = 0;               // base-parameter count
  std::vector<int> pivot_columns;
  double tolerance = 0.0;  // relative pivot tolerance used
  double pivot_gap = 0.0;  // smallest accepted pivot / rejection threshold
};

/// Gauss-Jordan elimination with partial pivoting at relative tolerance
/// tol * max|W|. Throws RankDeficient when no pivot survives or when the
/// decision between accepting and rejecting a pivot is ambiguous (competing
/// magnitudes within 10x of the threshold).
ReductionMap reduction_map(const MatX& w, double tol = 1e-8);

/// Y_r = Y * B_dagger.
MatX reduce_regressor(const MatX& y, const ReductionMap& map);

/// pi_r = B * pi.
VecX reduce_pi(const VecX& pi, const ReductionMap& map);

}  // namespace spr

#include "regressor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace spr {

MatX slotine_li_regressor(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                          const VecX& theta_r_dot, const VecX& theta_r_ddot) {
  const int m = model.dof();
  if (theta.size() != m || theta_dot.size() != m || theta_r_dot.size() != m ||
      theta_r_ddot.size() != m) {
    throw DimensionMismatch("slotine_li_regressor: state dimension mismatch");
  }
  const KinematicsEval kin = model.eval_kinematics(theta, theta_dot);
  const Vec3 g0 = model.gravity();

  MatX y = MatX::Zero(m, 9 * model.body_count());
  for (int b = 0; b < model.body_count(); ++b) {
    const BodyKinematics& bk = kin.body[b];
    const Vec3 w_body = bk.R.transpose() * (bk.Jw * theta_dot);
    const Vec3 wr_body = bk.R.transpose() * (bk.Jw * theta_r_dot);
    const Vec3 ar_body = bk.R.transpose() * (bk.Jw * theta_r_ddot + bk.Jw_dot * theta_r_dot);
    const Vec3 g_body = bk.R.transpose() * g0;

    // Columns 0..2 multiply m*rho, columns 3..8 multiply the 6 independent
    // entries of the pivot inertia (body frame).
    Eigen::Matrix<double, 3, 9> block;
    block.leftCols<3>() = skew(g_body);
    block.rightCols<6>() = inertia_tilde(ar_body) + skew(w_body) * inertia_tilde(wr_body);
    y.middleCols(9 * b, 9) = bk.Jw.transpose() * bk.R * block;
  }
  return y;
}

MatX linear_regressor(const RobotModel& model, const VecX& theta, const VecX& theta_dot,
                      const VecX& theta_ddot) {
  return slotine_li_regressor(model, theta, theta_dot, theta_dot, theta_ddot);
}

ObservationMatrix observation_matrix(const RobotModel& model, int sample_count,
                                     std::uint64_t seed, bool slotine_li_rows) {
  const int m = model.dof();
  const int cols = 9 * model.body_count();
  if (sample_count * m < cols) {
    throw InsufficientSamples("observation_matrix: " + std::to_string(sample_count) +
                              " samples give " + std::to_string(sample_count * m) +
                              " rows for " + std::to_string(cols) + " columns");
  }
  ObservationMatrix obs;
  obs.seed = seed;
  obs.slotine_li_rows = slotine_li_rows;
  obs.W = MatX::Zero(sample_count * m, cols);
  StateSampler sampler(model, seed);
  for (int i = 0; i < sample_count; ++i) {
    TaskState s = sampler.next();
    obs.W.middleRows(i * m, m) =
        slotine_li_rows
            ? slotine_li_regressor(model, s.theta, s.theta_dot, s.theta_r_dot,
                                   s.theta_r_ddot)
            : linear_regressor(model, s.theta, s.theta_dot, s.theta_ddot);
    obs.samples.push_back(std::move(s));
  }
  return obs;
}

ReductionMap reduction_map(const MatX& w, double tol) {
  const double max_abs = w.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) {
    throw RankDeficient("reduction_map: observation matrix is identically zero");
  }
  const double threshold = tol * max_abs;

  MatX a = w;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();

  std::vector<int> pivots;
  double smallest_pivot = std::numeric_limits<double>::infinity();
  double largest_rejected = 0.0;

  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
    // Partial pivoting: largest-magnitude entry in the remaining rows.
    Eigen::Index best = pivot_row;
    double best_mag = 0.0;
    for (Eigen::Index r = pivot_row; r < rows; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    if (best_mag < threshold) {
      largest_rejected = std::max(largest_rejected, best_mag);
      continue;
    }
    smallest_pivot = std::min(smallest_pivot, best_mag);
    a.row(pivot_row).swap(a.row(best));
    a.row(pivot_row) /= a(pivot_row, col);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == pivot_row) continue;
      const double f = a(r, col);
      if (f != 0.0) a.row(r) -= f * a.row(pivot_row);
    }
    pivots.push_back(static_cast<int>(col));
    ++pivot_row;
  }

  const int p = static_cast<int>(pivots.size());
  if (p == 0) {
    throw RankDeficient("reduction_map: no pivot above tolerance");
  }
  // Accepted and rejected magnitudes mingling near the threshold means the
  // base-parameter count is not numerically well defined at this tolerance.
  if (largest_rejected > 0.0 && smallest_pivot / largest_rejected < 10.0) {
    throw RankDeficient("reduction_map: ambiguous pivot decision (gap " +
                        std::to_string(smallest_pivot / largest_rejected) +
                        "x at tolerance " + std::to_string(tol) + ")");
  }

  ReductionMap map;
  map.p = p;
  map.pivot_columns = pivots;
  map.tolerance = tol;
  map.pivot_gap = smallest_pivot / std::max(largest_rejected, threshold);
  map.B = a.topRows(p);
  // Snap the pivot submatrix to an exact identity; elimination leaves it
  // there up to roundoff anyway.
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) {
      map.B(r, pivots[c]) = (r == c) ? 1.0 : 0.0;
    }
  }
  map.B_dagger =
      map.B.transpose() * (map.B * map.B.transpose()).ldlt().solve(MatX::Identity(p, p));
  return map;
}

MatX reduce_regressor(const MatX& y, const ReductionMap& map) {
  if (y.cols() != map.B_dagger.rows()) {
    throw DimensionMismatch("reduce_regressor: column count does not match reduction map");
  }
  return y * map.B_dagger;
}

VecX reduce_pi(const VecX& pi, const ReductionMap& map) {
  if (pi.size() != map.B.cols()) {
    throw DimensionMismatch("reduce_pi: parameter vector does not match reduction map");
  }
  return map.B * pi;
}

}  // namespace spr

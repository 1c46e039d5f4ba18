#include "model.hpp"

#include "errors.hpp"

namespace spr {

VecX assemble_pi(const RobotModel& model) {
  const auto& bodies = model.bodies();
  VecX pi(9 * static_cast<int>(bodies.size()));
  int at = 0;
  for (const auto& b : bodies) {
    pi.segment<3>(at) = b.mass * b.cm_body;
    pi.segment<6>(at + 3) = inertia_matrix_to_vec(b.i_pivot_body());
    at += 9;
  }
  return pi;
}

TaskState StateSampler::next() {
  const VecX lo = model.workspace_lower();
  const VecX hi = model.workspace_upper();
  const int m = model.dof();
  TaskState st;
  st.theta.resize(m);
  // Rejection sampling: workspace boxes may contain unreachable poses for
  // non-default geometries.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (int i = 0; i < m; ++i) st.theta[i] = uniform(rng, lo[i], hi[i]);
    if (model.in_workspace(st.theta)) break;
    if (attempt == 999) throw WorkspaceViolation("state sampler: no reachable pose found");
  }
  st.theta_dot.resize(m);
  st.theta_ddot.resize(m);
  st.theta_r_dot.resize(m);
  st.theta_r_ddot.resize(m);
  for (int i = 0; i < m; ++i) st.theta_dot[i] = uniform(rng, -vel_bound, vel_bound);
  for (int i = 0; i < m; ++i) st.theta_ddot[i] = uniform(rng, -acc_bound, acc_bound);
  for (int i = 0; i < m; ++i) st.theta_r_dot[i] = uniform(rng, -vel_bound, vel_bound);
  for (int i = 0; i < m; ++i) st.theta_r_ddot[i] = uniform(rng, -acc_bound, acc_bound);
  return st;
}

}  // namespace spr

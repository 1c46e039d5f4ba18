#include "rrr3.hpp"

#include "errors.hpp"

namespace spr {

namespace {
constexpr double kLegSingularTol = 1e-10;
const Vec3 kEz(0.0, 0.0, 1.0);
}  // namespace

Rrr3Model::Rrr3Model(Rrr3Geometry geometry) : geom_(std::move(geometry)) {
  if (geom_.bodies.size() != 7)
    throw ConfigError("3rrr model expects 7 bodies (platform + 3 proximal + 3 distal)");
  for (int i = 0; i < 3; ++i) {
    if (!(geom_.alpha1[i] > 0 && geom_.alpha1[i] < M_PI && geom_.alpha2[i] > 0 &&
          geom_.alpha2[i] < M_PI))
      throw ConfigError("3rrr geometry: link angular lengths must lie in (0, pi)");
  }
}

Rrr3Geometry Rrr3Model::default_geometry() {
  Rrr3Geometry g;
  const double deg = M_PI / 180.0;
  g.lambda = {0.0, 120.0 * deg, 240.0 * deg};
  g.eta = g.lambda;
  g.gamma_base = std::acos(std::sqrt(3.0) / 3.0);
  g.beta_plat = std::asin(std::sqrt(3.0) / 3.0);
  g.alpha1 = {80.0 * deg, 80.0 * deg, 80.0 * deg};
  g.alpha2 = {70.0 * deg, 70.0 * deg, 70.0 * deg};

  BodyInertia platform;
  platform.name = "platform";
  platform.mass = 0.604;
  platform.cm_body = {0.0, 0.0, 0.084};
  platform.i_cg_body = Vec3(0.003, 0.001, 0.001).asDiagonal();
  g.bodies.push_back(platform);
  for (int i = 0; i < 3; ++i) {
    BodyInertia b;
    b.name = "proximal" + std::to_string(i + 1);
    b.mass = 0.501;
    b.cm_body = {0.0, -0.117, 0.139};
    b.i_cg_body = Vec3(0.003, 0.003, 0.0).asDiagonal();
    g.bodies.push_back(b);
  }
  for (int i = 0; i < 3; ++i) {
    BodyInertia b;
    b.name = "distal" + std::to_string(i + 1);
    b.mass = 0.389;
    b.cm_body = {0.0, -0.093, 0.133};
    b.i_cg_body = Vec3(0.001, 0.001, 0.0).asDiagonal();
    g.bodies.push_back(b);
  }
  return g;
}

Mat3 Rrr3Model::base_frame(int leg) const {
  return rot_z(geom_.lambda[leg]) * rot_x(geom_.gamma_base - M_PI);
}

std::array<double, 3> Rrr3Model::ik(const VecX& theta,
                                    const std::array<double, 3>* prev_q) const {
  const Mat3 r_p = euler_zyx_rotation(theta[0], theta[1], theta[2]);
  std::array<double, 3> q{};
  for (int i = 0; i < 3; ++i) {
    const Vec3 v_star = rot_z(geom_.eta[i]) * rot_x(-geom_.beta_plat) * kEz;
    const Vec3 v = r_p * v_star;
    const Vec3 r = base_frame(i).transpose() * v;
    // Expand w(q) . v = cos(alpha2) into A cos q + B sin q = C.
    const double sa1 = std::sin(geom_.alpha1[i]), ca1 = std::cos(geom_.alpha1[i]);
    const double a = -r.y() * sa1;
    const double b = r.x() * sa1;
    const double c = std::cos(geom_.alpha2[i]) - r.z() * ca1;
    const double rad = std::hypot(a, b);
    if (rad < kLegSingularTol)
      throw SingularConfiguration("3rrr ik: degenerate leg " + std::to_string(i + 1));
    if (std::abs(c) > rad * (1.0 + 1e-12))
      throw UnreachablePose("3rrr ik: leg " + std::to_string(i + 1) + " cannot close");
    const double offset = std::acos(std::clamp(c / rad, -1.0, 1.0));
    q[i] = std::atan2(b, a) + geom_.branch[i] * offset;
    if (prev_q) {
      const double jump = std::remainder(q[i] - (*prev_q)[i], 2.0 * M_PI);
      if (std::abs(jump) > M_PI / 2.0)
        throw BranchJump("3rrr ik: leg " + std::to_string(i + 1) + " jumped branches");
    }
  }
  return q;
}

Rrr3Pose Rrr3Model::pose(const VecX& theta) const {
  Rrr3Pose p;
  p.theta = theta.head<3>();
  p.R_p = euler_zyx_rotation(theta[0], theta[1], theta[2]);
  p.q = ik(theta);
  for (int i = 0; i < 3; ++i) {
    const Mat3 base = base_frame(i);
    p.u_hat[i] = base * kEz;
    p.w_hat[i] = base * rot_z(p.q[i]) * rot_x(geom_.alpha1[i]) * kEz;
    p.v_star[i] = rot_z(geom_.eta[i]) * rot_x(-geom_.beta_plat) * kEz;
    p.v_hat[i] = p.R_p * p.v_star[i];
    p.p1[i] = p.v_hat[i].cross(p.w_hat[i]);
    p.p2[i] = p.u_hat[i].cross(p.v_hat[i]);
    p.h[i] = p.p1[i].dot(p.u_hat[i]);
  }
  return p;
}

double Rrr3Model::distal_psi(int leg, double q, const Vec3& v_hat) const {
  // Align the distal frame so that v = R_distal Rx(alpha2) z exactly.
  const Mat3 pre = base_frame(leg) * rot_z(q) * rot_x(geom_.alpha1[leg]);
  const Vec3 r = pre.transpose() * v_hat;
  return std::atan2(r.x(), -r.y());
}

KinematicsEval Rrr3Model::eval_kinematics(const VecX& theta, const VecX& theta_dot) const {
  if (theta.size() != 3 || theta_dot.size() != 3)
    throw DimensionMismatch("3rrr: theta, theta_dot must have length 3");

  const Rrr3Pose p = pose(theta);
  const Mat3 e = euler_rate_map(theta[0], theta[1]);
  const Mat3 e_dot = euler_rate_map_dot(theta[0], theta[1], theta_dot[0], theta_dot[1]);
  const Vec3 omega_p = e * theta_dot.head<3>();

  KinematicsEval out;
  out.J_actuator.resize(3, 3);
  out.body.resize(7);

  // Platform is body 0 with Jw = E, Jw_dot = E_dot.
  out.body[0].R = p.R_p;
  out.body[0].Jw = e;
  out.body[0].Jw_dot = e_dot;

  for (int i = 0; i < 3; ++i) {
    if (std::abs(p.h[i]) < kLegSingularTol)
      throw SingularConfiguration("3rrr: leg " + std::to_string(i + 1) + " at singularity");
    const Eigen::RowVector3d row_j = p.p1[i].transpose() * e / p.h[i];
    const Eigen::RowVector3d row_jp = p.p2[i].transpose() * e / p.h[i];
    out.J_actuator.row(i) = row_j;

    const double q_dot = row_j * theta_dot.head<3>();
    const Vec3 v_dot = omega_p.cross(p.v_hat[i]);
    const Vec3 w_dot = q_dot * p.u_hat[i].cross(p.w_hat[i]);
    const Vec3 p1_dot = v_dot.cross(p.w_hat[i]) + p.v_hat[i].cross(w_dot);
    const Vec3 p2_dot = p.u_hat[i].cross(v_dot);
    const double h_dot = p1_dot.dot(p.u_hat[i]);

    const Eigen::RowVector3d row_j_dot =
        (p1_dot.transpose() * e + p.p1[i].transpose() * e_dot) / p.h[i] -
        row_j * (h_dot / p.h[i]);
    const Eigen::RowVector3d row_jp_dot =
        (p2_dot.transpose() * e + p.p2[i].transpose() * e_dot) / p.h[i] -
        row_jp * (h_dot / p.h[i]);

    auto& prox = out.body[1 + i];
    prox.R = base_frame(i) * rot_z(p.q[i]);
    prox.Jw = p.u_hat[i] * row_j;
    prox.Jw_dot = p.u_hat[i] * row_j_dot;  // u_hat is fixed in the base

    auto& dist = out.body[4 + i];
    dist.R = prox.R * rot_x(geom_.alpha1[i]) * rot_z(distal_psi(i, p.q[i], p.v_hat[i]));
    dist.Jw = prox.Jw + p.w_hat[i] * row_jp;
    dist.Jw_dot = prox.Jw_dot + w_dot * row_jp + p.w_hat[i] * row_jp_dot;
  }
  return out;
}

std::vector<Mat3> Rrr3Model::body_rotations(const VecX& theta) const {
  const Rrr3Pose p = pose(theta);
  std::vector<Mat3> rot;
  rot.reserve(7);
  rot.push_back(p.R_p);
  for (int i = 0; i < 3; ++i) rot.push_back(base_frame(i) * rot_z(p.q[i]));
  for (int i = 0; i < 3; ++i)
    rot.push_back(base_frame(i) * rot_z(p.q[i]) * rot_x(geom_.alpha1[i]) *
                  rot_z(distal_psi(i, p.q[i], p.v_hat[i])));
  return rot;
}

bool Rrr3Model::in_workspace(const VecX& theta) const {
  for (int i = 0; i < 3; ++i)
    if (std::abs(theta[i]) > geom_.euler_bound) return false;
  try {
    (void)ik(theta);
  } catch (const UnreachablePose&) {
    return false;
  } catch (const SingularConfiguration&) {
    return false;
  }
  return true;
}

VecX Rrr3Model::workspace_lower() const {
  return VecX::Constant(3, -geom_.euler_bound);
}

VecX Rrr3Model::workspace_upper() const {
  return VecX::Constant(3, geom_.euler_bound);
}

}  // namespace spr

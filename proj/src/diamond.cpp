#include "diamond.hpp"

#include "errors.hpp"

namespace spr {

namespace {
constexpr double kSingularTol = 1e-12;
constexpr double kHalfPi = M_PI / 2.0;
}  // namespace

DiamondPose diamond_ik(const DiamondGeometry& g, double phi, double gamma) {
  const double sg = std::sin(gamma), cg = std::cos(gamma);
  const double sa = std::sin(g.alpha), ca = std::cos(g.alpha);
  const double sb = std::sin(g.beta), cb = std::cos(g.beta);
  const double denom = sg * sa;
  if (std::abs(denom) < kSingularTol)
    throw SingularConfiguration("diamond ik: sin(gamma)*sin(alpha) ~ 0");

  const double ua = (cb - cg * ca) / denom;
  if (std::abs(ua) > 1.0 + 1e-12)
    throw UnreachablePose("diamond ik: pose outside reachable workspace");
  const double angle_a = std::acos(std::clamp(ua, -1.0, 1.0));

  // Interior angle at vertex b of the spherical triangle with sides
  // alpha, beta, gamma (law of cosines, angle opposite side gamma).
  const double ub = (cg - ca * cb) / (sa * sb);
  const double angle_b = std::acos(std::clamp(ub, -1.0, 1.0));

  DiamondPose p;
  p.phi = phi;
  p.gamma = gamma;
  p.angle_a = angle_a;
  p.angle_b = angle_b;
  p.q1 = phi + angle_a;
  p.q2 = phi - angle_a;
  p.a_hat = Vec3(0, 0, 1);
  p.b_hat = rot_z(p.q2 + kHalfPi) * rot_x(g.alpha) * p.a_hat;
  p.c_hat = rot_z(p.q1 + kHalfPi) * rot_x(g.alpha) * p.a_hat;
  p.d_hat = rot_z(phi) * rot_y(gamma) * p.a_hat;
  return p;
}

double diamond_h(const DiamondGeometry& g, const DiamondPose& p) {
  const double sA = std::sin(p.angle_a);
  if (std::abs(sA) < kSingularTol)
    throw SingularConfiguration("diamond h: arm stretched/folded (sin A ~ 0)");
  // dq1/dgamma of the acos branch above; the opposite sign of the raw
  // (cot a - cos A cot g)/sin A expression.
  return (std::cos(p.angle_a) / std::tan(p.gamma) - 1.0 / std::tan(g.alpha)) / sA;
}

double diamond_s(const DiamondGeometry& g, const DiamondPose& p) {
  const double sB = std::sin(p.angle_b);
  if (std::abs(sB) < kSingularTol)
    throw SingularConfiguration("diamond s: passive joint at workspace boundary (sin B ~ 0)");
  return std::sin(p.gamma) / (std::sin(g.alpha) * std::sin(g.beta) * sB);
}

double diamond_c(const DiamondGeometry& g, const DiamondPose& p) {
  const double sA = std::sin(p.angle_a), cA = std::cos(p.angle_a);
  if (std::abs(sA) < kSingularTol)
    throw SingularConfiguration("diamond c: sin A ~ 0");
  const double sg = std::sin(p.gamma);
  const double h = diamond_h(g, p);
  return (-h * sA / std::tan(p.gamma) - cA / (sg * sg) - h * h * cA) / sA;
}

double diamond_s_dot(const DiamondGeometry& g, const DiamondPose& p, double gamma_dot) {
  const double s = diamond_s(g, p);
  const double ds_dgamma =
      s / std::tan(p.gamma) - s * s * std::cos(p.angle_b) / std::sin(p.angle_b);
  return ds_dgamma * gamma_dot;
}

DiamondModel::DiamondModel(DiamondGeometry geometry) : geom_(std::move(geometry)) {
  if (geom_.links.size() != 4)
    throw ConfigError("diamond model expects exactly 4 link bodies");
  if (!(geom_.alpha > 0 && geom_.alpha < kHalfPi && geom_.beta > 0 && geom_.beta < kHalfPi))
    throw ConfigError("diamond geometry: alpha, beta must lie in (0, pi/2)");
}

DiamondGeometry DiamondModel::default_geometry() {
  DiamondGeometry g;
  g.alpha = g.beta = 45.0 * M_PI / 180.0;
  const double masses[4] = {0.117, 0.112, 0.155, 0.145};
  const Vec3 cm[4] = {{0.098, 0, 0.232}, {0.087, 0, 0.210}, {0.107, 0, 0.254}, {0.078, 0, 0.188}};
  const Vec3 inertia_diag[4] = {{6.440e-4, 6.350e-4, 1.716e-4},
                                {5.359e-4, 5.284e-4, 0.150e-4},
                                {9.849e-4, 9.342e-4, 0.610e-4},
                                {7.577e-4, 7.496e-4, 2.348e-4}};
  for (int i = 0; i < 4; ++i) {
    BodyInertia b;
    b.name = "link" + std::to_string(i + 1);
    b.mass = masses[i];
    b.cm_body = cm[i];
    b.i_cg_body = inertia_diag[i].asDiagonal();
    g.links.push_back(b);
  }
  return g;
}

KinematicsEval DiamondModel::eval_kinematics(const VecX& theta, const VecX& theta_dot) const {
  if (theta.size() != 2 || theta_dot.size() != 2)
    throw DimensionMismatch("diamond: theta, theta_dot must have length 2");
  const double phi = theta[0], gamma = theta[1];
  const double phi_dot = theta_dot[0], gamma_dot = theta_dot[1];

  const DiamondPose p = diamond_ik(geom_, phi, gamma);
  const double h = diamond_h(geom_, p);
  const double s = diamond_s(geom_, p);
  const double c = diamond_c(geom_, p);
  const double s_dot = diamond_s_dot(geom_, p, gamma_dot);
  const double h_dot = c * gamma_dot;

  KinematicsEval out;
  out.J_actuator.resize(2, 2);
  out.J_actuator << 1.0, h,
                    1.0, -h;

  // omega_1 = q2_dot a, omega_2 = q1_dot a; the distal links add the
  // passive rate about b / c (link 4 sign fixed by frame closure, see tests).
  const double q1_dot = phi_dot + h * gamma_dot;
  const double q2_dot = phi_dot - h * gamma_dot;
  const Vec3 b_dot = (q2_dot * p.a_hat).cross(p.b_hat);
  const Vec3 c_dot = (q1_dot * p.a_hat).cross(p.c_hat);

  out.body.resize(4);
  auto& L1 = out.body[0];
  auto& L2 = out.body[1];
  auto& L3 = out.body[2];
  auto& L4 = out.body[3];

  L1.Jw.resize(3, 2);
  L1.Jw.col(0) = p.a_hat;
  L1.Jw.col(1) = -h * p.a_hat;
  L2.Jw.resize(3, 2);
  L2.Jw.col(0) = p.a_hat;
  L2.Jw.col(1) = h * p.a_hat;
  L3.Jw = L1.Jw;
  L3.Jw.col(1) -= s * p.b_hat;
  L4.Jw = L2.Jw;
  L4.Jw.col(1) += s * p.c_hat;

  L1.Jw_dot = MatX::Zero(3, 2);
  L1.Jw_dot.col(1) = -h_dot * p.a_hat;
  L2.Jw_dot = MatX::Zero(3, 2);
  L2.Jw_dot.col(1) = h_dot * p.a_hat;
  L3.Jw_dot = L1.Jw_dot;
  L3.Jw_dot.col(1) -= s_dot * p.b_hat + s * b_dot;
  L4.Jw_dot = L2.Jw_dot;
  L4.Jw_dot.col(1) += s_dot * p.c_hat + s * c_dot;

  const auto rot = body_rotations(theta);
  for (int i = 0; i < 4; ++i) out.body[i].R = rot[i];
  return out;
}

std::vector<Mat3> DiamondModel::body_rotations(const VecX& theta) const {
  const DiamondPose p = diamond_ik(geom_, theta[0], theta[1]);
  const Mat3 r1 = rot_z(p.q2 + kHalfPi);
  const Mat3 r2 = rot_z(p.q1 + kHalfPi);
  // psi offsets close the chain exactly: d = R3 Rx(beta) z = R4 Rx(beta) z.
  const Mat3 r3 = r1 * rot_x(geom_.alpha) * rot_z(M_PI - p.angle_b);
  const Mat3 r4 = r2 * rot_x(geom_.alpha) * rot_z(p.angle_b - M_PI);
  return {r1, r2, r3, r4};
}

bool DiamondModel::in_workspace(const VecX& theta) const {
  const double gamma = theta[1];
  if (!(gamma >= geom_.gamma_min && gamma <= geom_.gamma_max)) return false;
  const double u = (std::cos(geom_.beta) - std::cos(gamma) * std::cos(geom_.alpha)) /
                   (std::sin(gamma) * std::sin(geom_.alpha));
  return std::abs(u) <= 1.0 - 1e-9;
}

VecX DiamondModel::workspace_lower() const {
  VecX lo(2);
  lo << 0.0, geom_.gamma_min;
  return lo;
}

VecX DiamondModel::workspace_upper() const {
  VecX hi(2);
  hi << 2.0 * M_PI, geom_.gamma_max;
  return hi;
}

}  // namespace spr

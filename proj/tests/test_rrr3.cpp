#include "doctest.h"

#include <random>

#include "errors.hpp"
#include "oracle.hpp"
#include "rrr3.hpp"

using namespace spr;

namespace {
Rrr3Geometry geo() { return Rrr3Model::default_geometry(); }

VecX random_theta(const Rrr3Model& model, std::mt19937_64& rng) {
  const VecX lo = model.workspace_lower();
  const VecX hi = model.workspace_upper();
  for (int attempt = 0; attempt < 100; ++attempt) {
    VecX th(3);
    for (int i = 0; i < 3; ++i) th(i) = uniform(rng, lo(i), hi(i));
    if (model.in_workspace(th)) return th;
  }
  FAIL("no reachable pose sampled");
  return VecX::Zero(3);
}
}  // namespace

TEST_CASE("IK closure per leg") {
  const Rrr3Model model(geo());
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const VecX th = random_theta(model, rng);
    const Rrr3Pose pose = model.pose(th);
    for (int leg = 0; leg < 3; ++leg) {
      CHECK(std::abs(pose.w_hat[leg].dot(pose.v_hat[leg]) -
                     std::cos(model.geometry().alpha2[leg])) < 1e-12);
      CHECK(std::abs(pose.u_hat[leg].dot(pose.w_hat[leg]) -
                     std::cos(model.geometry().alpha1[leg])) < 1e-12);
      CHECK(pose.u_hat[leg].norm() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(pose.w_hat[leg].norm() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(pose.v_hat[leg].norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("leg symmetry at the home pose") {
  const Rrr3Model model(geo());
  const auto q = model.ik(VecX::Zero(3));
  CHECK(q[0] == doctest::Approx(q[1]).epsilon(1e-10));
  CHECK(q[1] == doctest::Approx(q[2]).epsilon(1e-10));
}

TEST_CASE("base unit vector construction") {
  const Rrr3Model model(geo());
  const Rrr3Pose pose = model.pose(VecX::Zero(3));
  // Leg 1 sits at lambda = 0: its base axis is the z axis tilted by the
  // base pyramid angle in the y-z plane.
  const double gb = model.geometry().gamma_base;
  const Vec3 expect = rot_z(model.geometry().lambda[0]) * rot_x(gb - M_PI) * Vec3::UnitZ();
  CHECK((pose.u_hat[0] - expect).norm() < 1e-14);
  CHECK(std::abs(expect.z() + std::cos(gb)) < 1e-14);
}

TEST_CASE("branch continuity guard") {
  const Rrr3Model model(geo());
  const auto q0 = model.ik(VecX::Zero(3));
  std::array<double, 3> far = {q0[0] + M_PI, q0[1], q0[2]};
  CHECK_THROWS_AS(model.ik(VecX::Zero(3), &far), BranchJump);
  // Consistent previous solution passes.
  const auto q1 = model.ik((VecX(3) << 0.01, 0.02, -0.01).finished(), &q0);
  CHECK(std::abs(q1[0] - q0[0]) < 0.2);
}

TEST_CASE("actuator Jacobian matches FD of the IK") {
  const Rrr3Model model(geo());
  std::mt19937_64 rng(22);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const VecX th = random_theta(model, rng);
    const MatX j = model.eval_kinematics(th, VecX::Zero(3)).J_actuator;
    for (int col = 0; col < 3; ++col) {
      VecX tp = th, tm = th;
      tp(col) += h;
      tm(col) -= h;
      const auto qp = model.ik(tp);
      const auto qm = model.ik(tm);
      for (int leg = 0; leg < 3; ++leg) {
        CHECK(std::abs(j(leg, col) - (qp[leg] - qm[leg]) / (2 * h)) < 1e-5);
      }
    }
  }
}

TEST_CASE("body angular Jacobians and rates match position-level FD") {
  const Rrr3Model model(geo());
  CHECK(model.body_count() == 7);
  const CheckResult r = fd_jacobian_check(model, 50, 23);
  CHECK(r.pass);
  CHECK(r.max_err < 1e-6);
}

TEST_CASE("unreachable pose rejected") {
  Rrr3Geometry g = geo();
  for (int i = 0; i < 3; ++i) g.alpha2[i] = 0.2;  // distal links far too short
  const Rrr3Model model(g);
  CHECK_THROWS_AS(model.ik((VecX(3) << 0.4, 0.4, 0.4).finished()), UnreachablePose);
}

TEST_CASE("platform rotation is the ZYX Euler rotation of theta") {
  const Rrr3Model model(geo());
  const VecX th = (VecX(3) << 0.12, -0.2, 0.31).finished();
  const auto rs = model.body_rotations(th);
  CHECK((rs[0] - euler_zyx_rotation(th(0), th(1), th(2))).norm() < 1e-14);
  for (const Mat3& r : rs) {
    CHECK((r * r.transpose() - Mat3::Identity()).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0));
  }
}

#include "doctest.h"

#include <random>

#include "spatial.hpp"

using namespace spr;

TEST_CASE("skew/unskew round trip and cross product") {
  const Vec3 a(0.3, -1.2, 2.5), b(-0.7, 0.4, 1.1);
  CHECK((skew(a) * b - a.cross(b)).norm() == doctest::Approx(0.0));
  CHECK((unskew(skew(a)) - a).norm() == doctest::Approx(0.0));
  CHECK((skew(a) + skew(a).transpose()).norm() == doctest::Approx(0.0));
}

TEST_CASE("axis rotations are proper orthonormal") {
  for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
    const Mat3 r = axis_rotation(ax, 0.73);
    CHECK((r * r.transpose() - Mat3::Identity()).norm() < 1e-14);
    CHECK(r.determinant() == doctest::Approx(1.0));
  }
  CHECK((rot_z(0.5) * Vec3::UnitZ() - Vec3::UnitZ()).norm() < 1e-15);
  CHECK((rot_x(M_PI / 2) * Vec3::UnitY() - Vec3::UnitZ()).norm() < 1e-15);
}

TEST_CASE("euler rate map matches FD of the rotation") {
  const double t1 = 0.4, t2 = -0.3, t3 = 0.7;
  const Mat3 e = euler_rate_map(t1, t2);

  // Column i of E is the world angular velocity for a unit rate of angle i.
  auto r_of = [&](double a, double b, double c) { return euler_zyx_rotation(a, b, c); };
  const Mat3 r0 = r_of(t1, t2, t3);
  const double h = 1e-7;
  const Mat3 d1 = (r_of(t1 + h, t2, t3) - r_of(t1 - h, t2, t3)) / (2 * h);
  const Mat3 d2 = (r_of(t1, t2 + h, t3) - r_of(t1, t2 - h, t3)) / (2 * h);
  const Mat3 d3 = (r_of(t1, t2, t3 + h) - r_of(t1, t2, t3 - h)) / (2 * h);
  CHECK((unskew(d1 * r0.transpose()) - e.col(0)).norm() < 1e-7);
  CHECK((unskew(d2 * r0.transpose()) - e.col(1)).norm() < 1e-7);
  CHECK((unskew(d3 * r0.transpose()) - e.col(2)).norm() < 1e-7);
}

TEST_CASE("euler rate map derivative matches FD along a path") {
  const double t1 = 0.2, t2 = 0.5, t1d = 0.8, t2d = -1.3;
  const double h = 1e-7;
  const Mat3 fd =
      (euler_rate_map(t1 + h * t1d, t2 + h * t2d) - euler_rate_map(t1 - h * t1d, t2 - h * t2d)) /
      (2 * h);
  CHECK((fd - euler_rate_map_dot(t1, t2, t1d, t2d)).norm() < 1e-7);
}

TEST_CASE("inertia tilde reproduces I*w") {
  InertiaVec6 v;
  v << 1.1, 0.2, -0.3, 2.2, 0.15, 3.3;
  const Mat3 i = inertia_vec_to_matrix(v);
  const Vec3 w(0.4, -0.9, 1.7);
  CHECK((inertia_tilde(w) * v - i * w).norm() < 1e-14);
  CHECK((inertia_matrix_to_vec(i) - v).norm() < 1e-14);
  CHECK((i - i.transpose()).norm() == doctest::Approx(0.0));
}

TEST_CASE("parallel axis shift: point mass") {
  // Point mass 2 kg at [0.1, 0, 0] has zero CG inertia and pivot inertia
  // 2*(0.1^2) about the two perpendicular axes.
  const Mat3 ia = parallel_axis_to_pivot(Mat3::Zero(), 2.0, Vec3(0.1, 0.0, 0.0));
  Mat3 expect = Mat3::Zero();
  expect(1, 1) = expect(2, 2) = 0.02;
  CHECK((ia - expect).norm() < 1e-15);
}

TEST_CASE("parallel axis preserves symmetry and adds PSD term") {
  InertiaVec6 v;
  v << 2.0, 0.1, 0.0, 3.0, -0.2, 4.0;
  const Mat3 icg = inertia_vec_to_matrix(v);
  const Mat3 ia = parallel_axis_to_pivot(icg, 1.5, Vec3(0.2, -0.1, 0.3));
  CHECK((ia - ia.transpose()).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Mat3> eig(ia - icg);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-14);
}

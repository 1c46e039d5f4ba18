#include "spatial.hpp"

namespace spr {

Mat3 axis_rotation(Axis axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  switch (axis) {
    case Axis::X:
      r << 1, 0, 0,
           0, c, -s,
           0, s, c;
      break;
    case Axis::Y:
      r << c, 0, s,
           0, 1, 0,
          -s, 0, c;
      break;
    case Axis::Z:
      r << c, -s, 0,
           s, c, 0,
           0, 0, 1;
      break;
  }
  return r;
}

Mat3 euler_zyx_rotation(double t1, double t2, double t3) {
  return rot_z(t1) * rot_y(t2) * rot_x(t3);
}

Mat3 euler_rate_map(double t1, double t2) {
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  Mat3 e;
  e << 0, -s1, c1 * c2,
       0, c1, s1 * c2,
       1, 0, -s2;
  return e;
}

Mat3 euler_rate_map_dot(double t1, double t2, double t1_dot, double t2_dot) {
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  Mat3 e;
  e << 0, -c1 * t1_dot, -s1 * t1_dot * c2 - c1 * s2 * t2_dot,
       0, -s1 * t1_dot, c1 * t1_dot * c2 - s1 * s2 * t2_dot,
       0, 0, -c2 * t2_dot;
  return e;
}

Tilde36 inertia_tilde(const Vec3& w) {
  Tilde36 t = Tilde36::Zero();
  t(0, 0) = w.x(); t(0, 1) = w.y(); t(0, 2) = w.z();
  t(1, 1) = w.x(); t(1, 3) = w.y(); t(1, 4) = w.z();
  t(2, 2) = w.x(); t(2, 4) = w.y(); t(2, 5) = w.z();
  return t;
}

Mat3 inertia_vec_to_matrix(const InertiaVec6& v) {
  Mat3 m;
  m << v[0], v[1], v[2],
       v[1], v[3], v[4],
       v[2], v[4], v[5];
  return m;
}

InertiaVec6 inertia_matrix_to_vec(const Mat3& m) {
  InertiaVec6 v;
  v << m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2);
  return v;
}

Mat3 parallel_axis_to_pivot(const Mat3& i_cg, double mass, const Vec3& rho) {
  return i_cg + mass * (rho.squaredNorm() * Mat3::Identity() - rho * rho.transpose());
}

}  // namespace spr

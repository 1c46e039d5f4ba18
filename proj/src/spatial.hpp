#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace spr {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// [Ixx, Ixy, Ixz, Iyy, Iyz, Izz] packing of a symmetric inertia matrix.
using InertiaVec6 = Eigen::Matrix<double, 6, 1>;

/// 3x6 matrix satisfying tilde(w) * ivec = inertia(ivec) * w.
using Tilde36 = Eigen::Matrix<double, 3, 6>;

enum class Axis { X, Y, Z };

/// Skew-symmetric matrix S(a) with S(a)*b = a x b.
inline Mat3 skew(const Vec3& a) {
  Mat3 s;
  s << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
      -a.y(), a.x(), 0.0;
  return s;
}

/// Vector of an (assumed) skew-symmetric matrix; inverse of skew().
inline Vec3 unskew(const Mat3& s) {
  return {0.5 * (s(2, 1) - s(1, 2)), 0.5 * (s(0, 2) - s(2, 0)), 0.5 * (s(1, 0) - s(0, 1))};
}

Mat3 axis_rotation(Axis axis, double angle);

inline Mat3 rot_x(double a) { return axis_rotation(Axis::X, a); }
inline Mat3 rot_y(double a) { return axis_rotation(Axis::Y, a); }
inline Mat3 rot_z(double a) { return axis_rotation(Axis::Z, a); }

/// Rz(t1) * Ry(t2) * Rx(t3).
Mat3 euler_zyx_rotation(double t1, double t2, double t3);

/// E(t1,t2) mapping ZYX Euler-angle rates to platform angular velocity,
/// w = E * theta_dot.
Mat3 euler_rate_map(double t1, double t2);

/// Total time derivative of euler_rate_map along (t1_dot, t2_dot).
Mat3 euler_rate_map_dot(double t1, double t2, double t1_dot, double t2_dot);

/// Row layout: [wx wy wz 0 0 0; 0 wx 0 wy wz 0; 0 0 wx 0 wy wz].
Tilde36 inertia_tilde(const Vec3& w);

Mat3 inertia_vec_to_matrix(const InertiaVec6& v);
InertiaVec6 inertia_matrix_to_vec(const Mat3& m);

/// Parallel-axis shift of a CG inertia to the pivot:
/// I_A = I_cg + m (rho'rho I - rho rho').
Mat3 parallel_axis_to_pivot(const Mat3& i_cg, double mass, const Vec3& rho);

/// Central finite difference of f at x with step h.
template <typename F>
double central_diff(F&& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central finite difference of a matrix/vector-valued function.
template <typename F>
auto central_diff_mat(F&& f, double x, double h = 1e-6) {
  auto hi = f(x + h);
  auto lo = f(x - h);
  return ((hi - lo) / (2.0 * h)).eval();
}

}  // namespace spr

// Closed-form 3-D velocity fields with exact gradients, used to drive the
// transport integrators. Fields flagged steady_euler satisfy the steady Euler
// equations; axisymmetric ones expose their cylindrical components too.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace blowlab {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;  // [i][j] = d u_i / d x_j

inline double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
inline Vec3 matvec(const Mat3& m, const Vec3& v) {
  return {dot3(m[0], v), dot3(m[1], v), dot3(m[2], v)};
}
inline Vec3 mat_t_vec(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
          m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
          m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2]};
}

struct AnalyticVelocityField {
  std::string name;
  std::function<Vec3(double t, const Vec3&)> u;
  std::function<Mat3(double t, const Vec3&)> grad_u;
  std::function<Vec3(double t, const Vec3&)> omega;      // optional curl
  std::function<double(double t, const Vec3&)> pressure;  // optional
  bool steady_euler = false;
  bool axisymmetric = false;    // no swirl
  double sample_radius = 1.0;   // ball where test points are drawn
};

// Cylindrical description of a no-swirl axisymmetric field.
struct AxisymField {
  std::function<double(double r, double z)> ur, uz;
  std::function<double(double r, double z)> ur_r, ur_z, uz_r, uz_z;
  std::function<double(double r, double z)> ur_over_r;  // finite at r = 0
};

AnalyticVelocityField zero_field();
AnalyticVelocityField strain_field(double l1, double l2, double l3);
AnalyticVelocityField rotation_field(double A);  // rigid rotation about z
AnalyticVelocityField shear_field(double A);     // u = (A y, 0, 0)
AnalyticVelocityField abc_field(double A, double B, double C);  // Beltrami
// Axisymmetric interior vortex u = (2cxz, 2cyz, 2c(a^2 - 2x^2 - 2y^2 - z^2)),
// a steady Euler flow with omega = 10 c r e_theta and invariant sphere |x| = a.
AnalyticVelocityField hill_field(double c = 0.1, double a = 1.0);
// Boundary-respecting recirculation cell in the unit cylinder r <= 1, z >= 0
// (kinematic only): velocity from the stream function r^2(1-r^2)^2 z^2 e^{-r^2-z^2}.
AnalyticVelocityField ring_field();

AxisymField hill_axisym(double c = 0.1, double a = 1.0);
AxisymField ring_axisym();

// Lookup by name: zero, strain, rotation, shear, abc, hill, ring.
AnalyticVelocityField field_by_name(const std::string& name);

}  // namespace blowlab

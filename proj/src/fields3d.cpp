#include "blowlab/fields3d.hpp"

#include <memory>
#include <stdexcept>

namespace blowlab {

namespace {

// Cartesian gradient of u = ur(r,z) e_r + uz(r,z) e_z.
Mat3 axi_grad(const AxisymField& f, const Vec3& x) {
  double r = std::hypot(x[0], x[1]);
  double ct = 1.0, st = 0.0;
  double urr = f.ur_r(r, x[2]), urz = f.ur_z(r, x[2]);
  double uzr = f.uz_r(r, x[2]), uzz = f.uz_z(r, x[2]);
  double uor = f.ur_over_r(r, x[2]);
  if (r > 1e-12) {
    ct = x[0] / r;
    st = x[1] / r;
  }
  Mat3 g;
  g[0][0] = urr * ct * ct + uor * st * st;
  g[0][1] = ct * st * (urr - uor);
  g[0][2] = urz * ct;
  g[1][0] = g[0][1];
  g[1][1] = urr * st * st + uor * ct * ct;
  g[1][2] = urz * st;
  g[2][0] = uzr * ct;
  g[2][1] = uzr * st;
  g[2][2] = uzz;
  return g;
}

Vec3 axi_vel(const AxisymField& f, const Vec3& x) {
  double r = std::hypot(x[0], x[1]);
  double ur = f.ur(r, x[2]), uz = f.uz(r, x[2]);
  if (r > 1e-12) return {ur * x[0] / r, ur * x[1] / r, uz};
  return {0.0, 0.0, uz};
}

}  // namespace

AnalyticVelocityField zero_field() {
  AnalyticVelocityField f;
  f.name = "zero";
  f.u = [](double, const Vec3&) { return Vec3{0, 0, 0}; };
  f.grad_u = [](double, const Vec3&) { return Mat3{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}; };
  f.omega = [](double, const Vec3&) { return Vec3{0, 0, 0}; };
  f.pressure = [](double, const Vec3&) { return 0.0; };
  f.steady_euler = true;
  return f;
}

AnalyticVelocityField strain_field(double l1, double l2, double l3) {
  AnalyticVelocityField f;
  f.name = "strain";
  f.u = [=](double, const Vec3& x) { return Vec3{l1 * x[0], l2 * x[1], l3 * x[2]}; };
  f.grad_u = [=](double, const Vec3&) {
    return Mat3{{{l1, 0, 0}, {0, l2, 0}, {0, 0, l3}}};
  };
  f.omega = [](double, const Vec3&) { return Vec3{0, 0, 0}; };
  f.pressure = [=](double, const Vec3& x) {
    return -0.5 * (l1 * l1 * x[0] * x[0] + l2 * l2 * x[1] * x[1] + l3 * l3 * x[2] * x[2]);
  };
  f.steady_euler = (std::fabs(l1 + l2 + l3) < 1e-14);
  return f;
}

AnalyticVelocityField rotation_field(double A) {
  AnalyticVelocityField f;
  f.name = "rotation";
  f.u = [=](double, const Vec3& x) { return Vec3{-A * x[1], A * x[0], 0.0}; };
  f.grad_u = [=](double, const Vec3&) {
    return Mat3{{{0, -A, 0}, {A, 0, 0}, {0, 0, 0}}};
  };
  f.omega = [=](double, const Vec3&) { return Vec3{0, 0, 2 * A}; };
  f.pressure = [=](double, const Vec3& x) {
    return 0.5 * A * A * (x[0] * x[0] + x[1] * x[1]);
  };
  f.steady_euler = true;
  return f;
}

AnalyticVelocityField shear_field(double A) {
  AnalyticVelocityField f;
  f.name = "shear";
  f.u = [=](double, const Vec3& x) { return Vec3{A * x[1], 0.0, 0.0}; };
  f.grad_u = [=](double, const Vec3&) {
    return Mat3{{{0, A, 0}, {0, 0, 0}, {0, 0, 0}}};
  };
  f.omega = [=](double, const Vec3&) { return Vec3{0, 0, -A}; };
  f.pressure = [](double, const Vec3&) { return 0.0; };
  f.steady_euler = true;
  return f;
}

AnalyticVelocityField abc_field(double A, double B, double C) {
  AnalyticVelocityField f;
  f.name = "abc";
  f.u = [=](double, const Vec3& x) {
    return Vec3{A * std::sin(x[2]) + C * std::cos(x[1]),
                B * std::sin(x[0]) + A * std::cos(x[2]),
                C * std::sin(x[1]) + B * std::cos(x[0])};
  };
  f.grad_u = [=](double, const Vec3& x) {
    return Mat3{{{0, -C * std::sin(x[1]), A * std::cos(x[2])},
                 {B * std::cos(x[0]), 0, -A * std::sin(x[2])},
                 {-B * std::sin(x[0]), C * std::cos(x[1]), 0}}};
  };
  f.omega = f.u;  // Beltrami: curl u = u
  f.pressure = [=](double, const Vec3& x) {
    Vec3 u{A * std::sin(x[2]) + C * std::cos(x[1]),
           B * std::sin(x[0]) + A * std::cos(x[2]),
           C * std::sin(x[1]) + B * std::cos(x[0])};
    return -0.5 * dot3(u, u);
  };
  f.steady_euler = true;
  f.sample_radius = 3.0;
  return f;
}

AnalyticVelocityField hill_field(double c, double a) {
  AnalyticVelocityField f;
  f.name = "hill";
  f.u = [=](double, const Vec3& x) {
    return Vec3{2 * c * x[0] * x[2], 2 * c * x[1] * x[2],
                2 * c * (a * a - 2 * x[0] * x[0] - 2 * x[1] * x[1] - x[2] * x[2])};
  };
  f.grad_u = [=](double, const Vec3& x) {
    return Mat3{{{2 * c * x[2], 0, 2 * c * x[0]},
                 {0, 2 * c * x[2], 2 * c * x[1]},
                 {-8 * c * x[0], -8 * c * x[1], -4 * c * x[2]}}};
  };
  f.omega = [=](double, const Vec3& x) {
    return Vec3{-10 * c * x[1], 10 * c * x[0], 0.0};
  };
  f.steady_euler = true;
  f.axisymmetric = true;
  f.sample_radius = 0.5 * a;
  return f;
}

AxisymField hill_axisym(double c, double a) {
  AxisymField f;
  f.ur = [=](double r, double z) { return 2 * c * r * z; };
  f.uz = [=](double r, double z) { return 2 * c * (a * a - 2 * r * r - z * z); };
  f.ur_r = [=](double, double z) { return 2 * c * z; };
  f.ur_z = [=](double r, double) { return 2 * c * r; };
  f.uz_r = [=](double r, double) { return -8 * c * r; };
  f.uz_z = [=](double, double z) { return -4 * c * z; };
  f.ur_over_r = [=](double, double z) { return 2 * c * z; };
  return f;
}

AxisymField ring_axisym() {
  auto P = [](double r, double z) { return std::exp(-r * r - z * z); };
  AxisymField f;
  f.ur = [=](double r, double z) {
    double q = 1.0 - r * r;
    return -2.0 * r * z * q * q * (1.0 - z * z) * P(r, z);
  };
  f.uz = [=](double r, double z) {
    double q = 1.0 - r * r;
    return 2.0 * z * z * q * (1.0 - 4.0 * r * r + r * r * r * r) * P(r, z);
  };
  f.ur_r = [=](double r, double z) {
    double q = 1.0 - r * r, r2 = r * r;
    return -2.0 * z * (1.0 - z * z) * q * (1.0 - 7.0 * r2 + 2.0 * r2 * r2) * P(r, z);
  };
  f.ur_z = [=](double r, double z) {
    double q = 1.0 - r * r, z2 = z * z;
    return -2.0 * r * q * q * (1.0 - 5.0 * z2 + 2.0 * z2 * z2) * P(r, z);
  };
  f.uz_r = [=](double r, double z) {
    double r2 = r * r, q = 1.0 - r2, w = 1.0 - 4.0 * r2 + r2 * r2;
    double bracket = -2.0 * r * w + q * (-8.0 * r + 4.0 * r * r2) - 2.0 * r * q * w;
    return 2.0 * z * z * bracket * P(r, z);
  };
  f.uz_z = [=](double r, double z) {
    double r2 = r * r, q = 1.0 - r2, w = 1.0 - 4.0 * r2 + r2 * r2;
    return 4.0 * z * (1.0 - z * z) * q * w * P(r, z);
  };
  f.ur_over_r = [=](double r, double z) {
    double q = 1.0 - r * r;
    return -2.0 * z * q * q * (1.0 - z * z) * P(r, z);
  };
  return f;
}

AnalyticVelocityField ring_field() {
  AxisymField ax = ring_axisym();
  auto axp = std::make_shared<AxisymField>(ax);
  AnalyticVelocityField f;
  f.name = "ring";
  f.u = [axp](double, const Vec3& x) { return axi_vel(*axp, x); };
  f.grad_u = [axp](double, const Vec3& x) { return axi_grad(*axp, x); };
  // omega = (dz ur - dr uz) e_theta
  f.omega = [axp](double, const Vec3& x) {
    double r = std::hypot(x[0], x[1]);
    double w = axp->ur_z(r, x[2]) - axp->uz_r(r, x[2]);
    if (r > 1e-12) return Vec3{-w * x[1] / r, w * x[0] / r, 0.0};
    return Vec3{0.0, 0.0, 0.0};
  };
  f.steady_euler = false;
  f.axisymmetric = true;
  f.sample_radius = 0.8;
  return f;
}

AnalyticVelocityField field_by_name(const std::string& name) {
  if (name == "zero") return zero_field();
  if (name == "strain") return strain_field(1.0, -1.0, 0.0);
  if (name == "rotation") return rotation_field(1.0);
  if (name == "shear") return shear_field(1.0);
  if (name == "abc") return abc_field(1.0, 1.0, 1.0);
  if (name == "hill") return hill_field();
  if (name == "ring") return ring_field();
  throw std::invalid_argument("field_by_name: unknown field '" + name + "'");
}

}  // namespace blowlab

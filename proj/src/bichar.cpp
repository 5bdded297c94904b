#include "blowlab/bichar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowlab/numerics.hpp"

namespace blowlab {

namespace {

constexpr double kXiFloor = 1e-10;

void check_finite(const double* p, int n, const char* who) {
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(p[i]))
      throw std::runtime_error(std::string(who) + ": state became non-finite");
}

int step_count(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0))
    throw std::invalid_argument("integrator: need dt > 0 and t_end >= 0");
  return static_cast<int>(std::llround(t_end / dt));
}

}  // namespace

TrajectoryBundle integrate_euler(const AnalyticVelocityField& f, const Vec3& x0,
                                 const Vec3& xi0, const Vec3& b0,
                                 const Vec3& b_tilde0, double t_end, double dt) {
  int n = step_count(t_end, dt);
  double xi_ref = norm3(xi0);
  if (!(xi_ref > 0.0)) throw std::invalid_argument("integrate_euler: xi0 = 0");
  OdeRhs<12> rhs = [&](double t, const std::array<double, 12>& y) {
    Vec3 g{y[0], y[1], y[2]}, xi{y[3], y[4], y[5]}, b{y[6], y[7], y[8]},
        bt{y[9], y[10], y[11]};
    Vec3 u = f.u(t, g);
    Mat3 G = f.grad_u(t, g);
    Vec3 dxi = mat_t_vec(G, xi);
    double n2 = dot3(xi, xi);
    Vec3 Gb = matvec(G, b), Gbt = matvec(G, bt);
    double c = 2.0 * dot3(xi, Gb) / n2;
    double ct = 2.0 * dot3(xi, Gbt) / n2;
    std::array<double, 12> d;
    for (int i = 0; i < 3; ++i) {
      d[i] = u[i];
      d[3 + i] = -dxi[i];
      d[6 + i] = -Gb[i] + c * xi[i];
      d[9 + i] = -Gbt[i] + ct * xi[i];
    }
    return d;
  };
  std::array<double, 12> y{x0[0],       x0[1],       x0[2],  xi0[0],
                           xi0[1],      xi0[2],      b0[0],  b0[1],
                           b0[2],       b_tilde0[0], b_tilde0[1], b_tilde0[2]};
  TrajectoryBundle tb;
  tb.t.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    double t = k * dt;
    if (k > 0) y = rk4_step<12>(rhs, (k - 1) * dt, y, dt);
    check_finite(y.data(), 12, "integrate_euler");
    Vec3 g{y[0], y[1], y[2]}, xi{y[3], y[4], y[5]}, b{y[6], y[7], y[8]},
        bt{y[9], y[10], y[11]};
    if (norm3(xi) < kXiFloor * xi_ref)
      throw std::runtime_error("integrate_euler: phase vector collapsed");
    Mat3 G = f.grad_u(t, g);
    tb.t.push_back(t);
    tb.gamma.push_back(g);
    tb.xi.push_back(xi);
    tb.b.push_back(b);
    tb.b_tilde.push_back(bt);
    tb.c_trace.push_back(2.0 * dot3(xi, matvec(G, b)) / dot3(xi, xi));
  }
  return tb;
}

TrajectoryBundle integrate_boussinesq(const AnalyticVelocityField& f,
                                      const Vec3& x0, const Vec3& xi0,
                                      const Vec3& b0, double t_end, double dt) {
  int n = step_count(t_end, dt);
  double xi_ref = norm3(xi0);
  if (!(xi_ref > 0.0)) throw std::invalid_argument("integrate_boussinesq: xi0 = 0");
  auto Lb = [](const Vec3& b) { return Vec3{0.0, 0.0, b[0]}; };
  OdeRhs<9> rhs = [&](double t, const std::array<double, 9>& y) {
    Vec3 g{y[0], y[1], y[2]}, xi{y[3], y[4], y[5]}, b{y[6], y[7], y[8]};
    Vec3 u = f.u(t, g);
    Mat3 G = f.grad_u(t, g);
    Vec3 dxi = mat_t_vec(G, xi);
    double n2 = dot3(xi, xi);
    Vec3 Gb = matvec(G, b), lb = Lb(b);
    double ceff = (2.0 * dot3(xi, Gb) - dot3(xi, lb)) / n2;
    std::array<double, 9> d;
    for (int i = 0; i < 3; ++i) {
      d[i] = u[i];
      d[3 + i] = -dxi[i];
      d[6 + i] = -Gb[i] + lb[i] + ceff * xi[i];
    }
    return d;
  };
  std::array<double, 9> y{x0[0], x0[1], x0[2], xi0[0], xi0[1],
                          xi0[2], b0[0], b0[1], b0[2]};
  TrajectoryBundle tb;
  for (int k = 0; k <= n; ++k) {
    double t = k * dt;
    if (k > 0) y = rk4_step<9>(rhs, (k - 1) * dt, y, dt);
    check_finite(y.data(), 9, "integrate_boussinesq");
    Vec3 g{y[0], y[1], y[2]}, xi{y[3], y[4], y[5]}, b{y[6], y[7], y[8]};
    if (norm3(xi) < kXiFloor * xi_ref)
      throw std::runtime_error("integrate_boussinesq: phase vector collapsed");
    Mat3 G = f.grad_u(t, g);
    tb.t.push_back(t);
    tb.gamma.push_back(g);
    tb.xi.push_back(xi);
    tb.b.push_back(b);
    tb.b_tilde.push_back(Vec3{0, 0, 0});
    tb.c_trace.push_back(
        (2.0 * dot3(xi, matvec(G, b)) - dot3(xi, Lb(b))) / dot3(xi, xi));
  }
  return tb;
}

ConservationReport conservation_report(const AnalyticVelocityField& f,
                                       const TrajectoryBundle& tb) {
  ConservationReport rep;
  auto drift = [](const std::vector<double>& q, double scale) {
    double q0 = q.front(), m = 0.0;
    for (double v : q) m = std::max(m, std::fabs(v - q0));
    double denom = std::fabs(q0) > 1e-12 * scale ? std::fabs(q0) : scale;
    return denom > 0.0 ? m / denom : 0.0;
  };
  size_t n = tb.t.size();
  std::vector<double> q1(n), q2, q3(n);
  double scale = 0.0;
  for (size_t k = 0; k < n; ++k) {
    q1[k] = dot3(tb.b[k], tb.xi[k]);
    q3[k] = dot3(cross3(tb.b[k], tb.b_tilde[k]), tb.xi[k]);
    scale = std::max(scale, norm3(tb.b[k]) * norm3(tb.xi[k]));
  }
  rep.drift_b_xi = drift(q1, scale);
  rep.drift_bb_xi = drift(q3, scale * (1.0 + scale));
  if (f.omega && f.steady_euler) {
    q2.resize(n);
    double s2 = 0.0;
    for (size_t k = 0; k < n; ++k) {
      Vec3 om = f.omega(tb.t[k], tb.gamma[k]);
      q2[k] = dot3(om, tb.xi[k]);
      s2 = std::max(s2, norm3(om) * norm3(tb.xi[k]));
    }
    rep.drift_omega_xi = drift(q2, s2);
    rep.omega_checked = true;
  }
  return rep;
}

namespace {

struct Candidate {
  std::vector<double> coords;  // point in the unit cube
  double score = 0.0;
  std::vector<double> trace;
};

void unit_frame(const Vec3& xi, Vec3& e1, Vec3& e2) {
  Vec3 h = (std::fabs(xi[0]) < 0.9) ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = cross3(xi, h);
  double n1 = norm3(e1);
  for (auto& v : e1) v /= n1;
  e2 = cross3(xi, e1);
  double n2 = norm3(e2);
  for (auto& v : e2) v /= n2;
}

// map a unit-cube point to (x0, xi0, b0) respecting the field's symmetry
void decode_sample(const AnalyticVelocityField& f, const std::vector<double>& u,
                   Vec3& x0, Vec3& xi0, Vec3& b0) {
  double r = f.sample_radius;
  x0 = {r * (2 * u[0] - 1), r * (2 * u[1] - 1), r * (2 * u[2] - 1)};
  if (f.axisymmetric) {
    double rr = std::hypot(x0[0], x0[1]);
    Vec3 er = (rr > 1e-9) ? Vec3{x0[0] / rr, x0[1] / rr, 0.0} : Vec3{1, 0, 0};
    double psi = 2.0 * kPi * u[3];
    xi0 = {std::cos(psi) * er[0], std::cos(psi) * er[1], std::sin(psi)};
  } else {
    double th = std::acos(std::min(1.0, std::max(-1.0, 2 * u[3] - 1)));
    double ph = 2.0 * kPi * u[4];
    xi0 = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  }
  Vec3 e1, e2;
  unit_frame(xi0, e1, e2);
  double a = 2.0 * kPi * u[5];
  for (int i = 0; i < 3; ++i) b0[i] = std::cos(a) * e1[i] + std::sin(a) * e2[i];
}

std::vector<double> value_trace(const AnalyticVelocityField& f,
                                const std::vector<double>& u, double t_end,
                                double dt, GrowthFlavor flavor) {
  Vec3 x0, xi0, b0;
  decode_sample(f, u, x0, xi0, b0);
  TrajectoryBundle tb;
  try {
    tb = (flavor == GrowthFlavor::buoyancy)
             ? integrate_boussinesq(f, x0, xi0, b0, t_end, dt)
             : integrate_euler(f, x0, xi0, b0, b0, t_end, dt);
  } catch (const std::runtime_error&) {
    return {};  // degenerate path, contributes nothing
  }
  std::vector<double> val(tb.t.size());
  double r0 = std::max(std::hypot(x0[0], x0[1]), 1e-6);
  const double sigma = 0.99;
  for (size_t k = 0; k < tb.t.size(); ++k) {
    double v = norm3(tb.b[k]);
    if (flavor == GrowthFlavor::weighted_radius) {
      double rt = std::max(std::hypot(tb.gamma[k][0], tb.gamma[k][1]), 1e-6);
      v *= std::pow(rt / r0, -sigma);
    }
    val[k] = v;
  }
  return val;
}

}  // namespace

GrowthEstimate beta_estimator(const AnalyticVelocityField& f, double t_end,
                              double dt, GrowthFlavor flavor, int n_samples,
                              std::uint64_t seed) {
  int n = step_count(t_end, dt);
  int dim = 6;
  Rng rng(seed);
  auto pts = latin_hypercube(n_samples, dim, rng);
  std::vector<Candidate> cands(n_samples);
  std::vector<double> global(n + 1, 0.0);
  auto absorb = [&](const std::vector<double>& tr) {
    double run = 0.0;
    for (size_t k = 0; k < tr.size() && k < global.size(); ++k) {
      run = std::max(run, tr[k]);
      global[k] = std::max(global[k], run);
    }
  };
  for (int s = 0; s < n_samples; ++s) {
    cands[s].coords = pts[s];
    cands[s].trace = value_trace(f, pts[s], t_end, dt, flavor);
    for (double v : cands[s].trace) cands[s].score = std::max(cands[s].score, v);
    absorb(cands[s].trace);
  }
  std::partial_sort(cands.begin(), cands.begin() + std::min(3, n_samples),
                    cands.end(), [](const Candidate& a, const Candidate& b) {
                      return a.score > b.score;
                    });
  const double hs[3] = {0.1, 0.03, 0.01};
  for (int ci = 0; ci < std::min(3, n_samples); ++ci) {
    Candidate best = cands[ci];
    for (double h : hs)
      for (int d = 0; d < dim; ++d)
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          std::vector<double> c = best.coords;
          c[d] = std::min(1.0, std::max(0.0, c[d] + sgn * h));
          auto tr = value_trace(f, c, t_end, dt, flavor);
          double sc = 0.0;
          for (double v : tr) sc = std::max(sc, v);
          if (sc > best.score) {
            best.coords = c;
            best.score = sc;
            best.trace = tr;
          }
        }
    absorb(best.trace);
  }
  GrowthEstimate ge;
  ge.t.resize(n + 1);
  for (int k = 0; k <= n; ++k) ge.t[k] = k * dt;
  // running max in time, and never below the t = 0 normalization |b0| = 1
  double run = 1.0;
  ge.beta_trace.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    run = std::max(run, global[k]);
    ge.beta_trace[k] = run;
  }
  ge.beta_hat = ge.beta_trace.back();
  return ge;
}

ExpansionReport expansion_rate(const AxisymField& f, double z0, double t_end,
                               double dt) {
  int n = step_count(t_end, dt);
  ExpansionReport rep;
  // axis characteristic and its integrated stretching rate
  OdeRhs<2> axis_rhs = [&](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{f.uz(0.0, y[0]), f.ur_over_r(0.0, y[0])};
  };
  std::array<double, 2> ax{z0, 0.0};
  for (int k = 0; k < n; ++k) ax = rk4_step<2>(axis_rhs, k * dt, ax, dt);
  rep.axis_factor = std::exp(ax[1]);
  OdeRhs<2> traj_rhs = [&](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{f.ur(y[0], y[1]), f.uz(y[0], y[1])};
  };
  for (double r0 : {1e-4, 1e-3, 1e-2}) {
    std::array<double, 2> y{r0, z0};
    for (int k = 0; k < n; ++k) {
      y = rk4_step<2>(traj_rhs, k * dt, y, dt);
      double on_axis = f.ur_over_r(0.0, y[1]);
      double here = f.ur_over_r(y[0], y[1]);
      if (std::fabs(on_axis) > 1e-12 &&
          (here * on_axis < 0.0 || std::fabs(here) < 0.5 * std::fabs(on_axis) ||
           std::fabs(here) > 2.0 * std::fabs(on_axis)))
        rep.within_strip = false;
    }
    rep.sup_ratio = std::max(rep.sup_ratio, y[0] / r0);
  }
  return rep;
}

double flow_map_invertibility(const AnalyticVelocityField& f, double t_end,
                              double dt, int n, std::uint64_t seed) {
  int steps = step_count(t_end, dt);
  Rng rng(seed);
  auto pts = latin_hypercube(n, 3, rng);
  OdeRhs<3> rhs = [&](double t, const std::array<double, 3>& y) {
    Vec3 u = f.u(t, {y[0], y[1], y[2]});
    return std::array<double, 3>{u[0], u[1], u[2]};
  };
  double worst = 0.0;
  for (int s = 0; s < n; ++s) {
    std::array<double, 3> x0;
    for (int i = 0; i < 3; ++i)
      x0[i] = f.sample_radius * (2.0 * pts[s][i] - 1.0);
    std::array<double, 3> y = x0;
    for (int k = 0; k < steps; ++k) y = rk4_step<3>(rhs, k * dt, y, dt);
    for (int k = steps; k > 0; --k) y = rk4_step<3>(rhs, k * dt, y, -dt);
    double e = std::sqrt((y[0] - x0[0]) * (y[0] - x0[0]) +
                         (y[1] - x0[1]) * (y[1] - x0[1]) +
                         (y[2] - x0[2]) * (y[2] - x0[2]));
    worst = std::max(worst, e);
  }
  return worst;
}

AxisymBundle integrate_axisym(const AxisymField& f, double r0, double z0,
                              const std::array<double, 2>& xi0, const Vec3& b0,
                              double S0, double t_end, double dt) {
  int n = step_count(t_end, dt);
  double xi_ref = std::hypot(xi0[0], xi0[1]);
  if (!(xi_ref > 0.0)) throw std::invalid_argument("integrate_axisym: xi0 = 0");
  OdeRhs<7> rhs = [&](double, const std::array<double, 7>& y) {
    double r = y[0], z = y[1], xr = y[2], xz = y[3];
    double br = y[4], bth = y[5], bz = y[6];
    double urr = f.ur_r(r, z), urz = f.ur_z(r, z);
    double uzr = f.uz_r(r, z), uzz = f.uz_z(r, z);
    double w1 = urr * br + urz * bz, w2 = uzr * br + uzz * bz;
    double c = 2.0 * (xr * w1 + xz * w2) / (xr * xr + xz * xz);
    return std::array<double, 7>{f.ur(r, z),
                                 f.uz(r, z),
                                 -(urr * xr + uzr * xz),
                                 -(urz * xr + uzz * xz),
                                 -w1 + c * xr,
                                 -f.ur_over_r(r, z) * bth,
                                 -w2 + c * xz};
  };
  std::array<double, 7> y{r0, z0, xi0[0], xi0[1], b0[0], b0[1], b0[2]};
  AxisymBundle ab;
  ab.S0 = S0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) y = rk4_step<7>(rhs, (k - 1) * dt, y, dt);
    check_finite(y.data(), 7, "integrate_axisym");
    if (std::hypot(y[2], y[3]) < kXiFloor * xi_ref)
      throw std::runtime_error("integrate_axisym: phase vector collapsed");
    ab.t.push_back(k * dt);
    ab.rz.push_back({y[0], y[1]});
    ab.xi.push_back({y[2], y[3]});
    ab.b.push_back({y[4], y[5], y[6]});
  }
  return ab;
}

}  // namespace blowlab

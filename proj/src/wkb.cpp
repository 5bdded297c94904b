#include "blowlab/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowlab/burgers.hpp"  // plateau_bump
#include "blowlab/numerics.hpp"

namespace blowlab {

namespace {

Vec3 backtrace(const WKBData& d, double t, const Vec3& x) {
  int steps = std::max(1, static_cast<int>(std::llround(t / d.ode_dt)));
  if (t <= 0.0) return x;
  double dt = t / steps;
  OdeRhs<3> rhs = [&](double tt, const std::array<double, 3>& y) {
    Vec3 u = d.flow.u(tt, {y[0], y[1], y[2]});
    return std::array<double, 3>{u[0], u[1], u[2]};
  };
  std::array<double, 3> y{x[0], x[1], x[2]};
  for (int k = steps; k > 0; --k) y = rk4_step<3>(rhs, k * dt, y, -dt);
  return {y[0], y[1], y[2]};
}

struct Transported {
  Vec3 gamma, xi, b;
};

Transported transport_forward(const WKBData& d, const Vec3& x0, const Vec3& xi0,
                              const Vec3& b0, double t) {
  int steps = std::max(1, static_cast<int>(std::llround(t / d.ode_dt)));
  if (t <= 0.0) return {x0, xi0, b0};
  double dt = t / steps;
  OdeRhs<9> rhs = [&](double tt, const std::array<double, 9>& y) {
    Vec3 g{y[0], y[1], y[2]}, xi{y[3], y[4], y[5]}, b{y[6], y[7], y[8]};
    Vec3 u = d.flow.u(tt, g);
    Mat3 G = d.flow.grad_u(tt, g);
    Vec3 dxi = mat_t_vec(G, xi), Gb = matvec(G, b);
    double c = 2.0 * dot3(xi, Gb) / dot3(xi, xi);
    std::array<double, 9> dy;
    for (int i = 0; i < 3; ++i) {
      dy[i] = u[i];
      dy[3 + i] = -dxi[i];
      dy[6 + i] = -Gb[i] + c * xi[i];
    }
    return dy;
  };
  std::array<double, 9> y{x0[0], x0[1], x0[2], xi0[0], xi0[1],
                          xi0[2], b0[0], b0[1], b0[2]};
  for (int k = 0; k < steps; ++k) y = rk4_step<9>(rhs, k * dt, y, dt);
  return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}, {y[6], y[7], y[8]}};
}

}  // namespace

WKBData hill_wkb_data() {
  WKBData d;
  d.flow = hill_field();
  d.S0 = [](const Vec3& x) { return x[2]; };
  d.gradS0 = [](const Vec3&) { return Vec3{0, 0, 1}; };
  d.b0 = [](const Vec3&) { return Vec3{1, 0, 0}; };
  d.support_center = {0.3, 0.0, 0.2};
  d.support_radius = 0.12;
  Vec3 c = d.support_center;
  double rho = d.support_radius;
  auto raw = [c, rho](const Vec3& x) {
    double r = std::sqrt((x[0] - c[0]) * (x[0] - c[0]) +
                         (x[1] - c[1]) * (x[1] - c[1]) +
                         (x[2] - c[2]) * (x[2] - c[2]));
    return plateau_bump(r / rho);
  };
  // normalize the envelope to unit L2 mass
  std::vector<double> gx, gw;
  gauss_legendre(24, gx, gw);
  double m2 = 0.0;
  for (size_t i = 0; i < gx.size(); ++i)
    for (size_t j = 0; j < gx.size(); ++j)
      for (size_t k = 0; k < gx.size(); ++k) {
        Vec3 x{c[0] + rho * gx[i], c[1] + rho * gx[j], c[2] + rho * gx[k]};
        double v = raw(x);
        m2 += gw[i] * gw[j] * gw[k] * rho * rho * rho * v * v;
      }
  double scale = 1.0 / std::sqrt(m2);
  d.phi0 = [raw, scale](const Vec3& x) { return scale * raw(x); };
  return d;
}

WKBState evaluate_state(const WKBData& d, double t, const Vec3& x) {
  Vec3 x0 = backtrace(d, t, x);
  Vec3 xi0 = d.gradS0(x0), b0v = d.b0(x0);
  Transported tr = transport_forward(d, x0, xi0, b0v, t);
  WKBState st;
  st.xi = tr.xi;
  st.b = tr.b;
  st.S = d.S0(x0);
  st.phi = d.phi0(x0);
  Mat3 G = d.flow.grad_u(t, x);
  st.c = 2.0 * dot3(st.xi, matvec(G, st.b)) / dot3(st.xi, st.xi);
  return st;
}

LagrangianMarkerCloud build_fields(const WKBData& d, double t, int n_markers,
                                   std::uint64_t seed) {
  Rng rng(seed);
  auto pts = latin_hypercube(n_markers, 3, rng);
  LagrangianMarkerCloud cl;
  cl.t = t;
  for (int s = 0; s < n_markers; ++s) {
    Vec3 x0;
    for (int i = 0; i < 3; ++i)
      x0[i] = d.support_center[i] + d.support_radius * (2.0 * pts[s][i] - 1.0);
    Vec3 xi0 = d.gradS0(x0), b0v = d.b0(x0);
    if (std::fabs(dot3(xi0, b0v)) > 1e-8 * norm3(xi0) * norm3(b0v))
      throw std::invalid_argument("build_fields: amplitude not orthogonal to the phase gradient");
    Transported tr = transport_forward(d, x0, xi0, b0v, t);
    cl.x0.push_back(x0);
    cl.xt.push_back(tr.gamma);
    cl.xi.push_back(tr.xi);
    cl.b.push_back(tr.b);
    cl.S.push_back(d.S0(x0));
    cl.phi.push_back(d.phi0(x0));
    double amp = std::max(norm3(tr.xi) / norm3(xi0), norm3(tr.b) / norm3(b0v));
    cl.L_gamma = std::max(cl.L_gamma, amp);
  }
  return cl;
}

double corridor_width(double delta, double L_gamma) {
  double q = L_gamma + 1.0;
  return delta / (4.0 * q * q * q);
}

WaveSample wave_at(const WKBData& d, double eps, double t, const Vec3& x,
                   double fd_h) {
  if (!(eps > 0.0)) throw std::invalid_argument("wave_at: eps must be positive");
  WKBState st = evaluate_state(d, t, x);
  double th = st.S / eps, cs = std::cos(th), sn = std::sin(th);
  WaveSample w;
  for (int i = 0; i < 3; ++i) {
    w.v_re[i] = -st.phi * st.b[i] * sn;  // i phi b e^{i theta}
    w.v_im[i] = st.phi * st.b[i] * cs;
  }
  w.Q_re = -eps * st.c * st.phi * cs;  // -eps c phi e^{i theta}
  w.Q_im = -eps * st.c * st.phi * sn;
  // first-order corrector phi curl(W) + grad(phi) x W, W = b x xi / |xi|^2
  auto Wf = [&](const Vec3& y) {
    WKBState s = evaluate_state(d, t, y);
    Vec3 w3 = cross3(s.b, s.xi);
    double n2 = dot3(s.xi, s.xi);
    return Vec3{w3[0] / n2, w3[1] / n2, w3[2] / n2};
  };
  Mat3 dW;  // dW[i][j] = d W_i / d x_j
  Vec3 gphi;
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += fd_h;
    xm[j] -= fd_h;
    Vec3 Wp = Wf(xp), Wm = Wf(xm);
    for (int i = 0; i < 3; ++i) dW[i][j] = (Wp[i] - Wm[i]) / (2.0 * fd_h);
    gphi[j] = (evaluate_state(d, t, xp).phi - evaluate_state(d, t, xm).phi) /
              (2.0 * fd_h);
  }
  Vec3 curlW{dW[2][1] - dW[1][2], dW[0][2] - dW[2][0], dW[1][0] - dW[0][1]};
  Vec3 W0 = Wf(x);
  Vec3 gxW = cross3(gphi, W0);
  for (int i = 0; i < 3; ++i) {
    double cv = st.phi * curlW[i] + gxW[i];
    w.vfull_re[i] = w.v_re[i] + eps * cv * cs;
    w.vfull_im[i] = w.v_im[i] + eps * cv * sn;
  }
  return w;
}

WKBSolution assemble(const WKBData& d, const LagrangianMarkerCloud& cloud,
                     double eps, double delta) {
  WKBSolution sol;
  sol.eps = eps;
  sol.delta = delta;
  sol.L_gamma = cloud.L_gamma;
  sol.delta2 = corridor_width(delta, cloud.L_gamma);
  sol.t = cloud.t;
  for (const Vec3& x : cloud.xt) {
    sol.points.push_back(x);
    sol.wave.push_back(wave_at(d, eps, cloud.t, x));
  }
  return sol;
}

ResidualCheck residual_identity_check(const WKBData& d, double t,
                                      const std::vector<double>& eps_list,
                                      int n_pts, std::uint64_t seed) {
  if (eps_list.size() < 2)
    throw std::invalid_argument("residual_identity_check: need >= 2 eps values");
  LagrangianMarkerCloud probe = build_fields(d, t, 64, seed + 1);
  Vec3 lo = probe.xt.front(), hi = lo;
  for (const Vec3& x : probe.xt)
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], x[i]);
      hi[i] = std::max(hi[i], x[i]);
    }
  Rng rng(seed);
  auto pts = latin_hypercube(n_pts, 3, rng);
  std::vector<Vec3> xs(n_pts);
  for (int s = 0; s < n_pts; ++s)
    for (int i = 0; i < 3; ++i) {
      double pad = 0.1 * (hi[i] - lo[i]);
      xs[s][i] = lo[i] - pad + (hi[i] - lo[i] + 2 * pad) * pts[s][i];
    }

  struct CVec {
    Vec3 re{0, 0, 0}, im{0, 0, 0};
  };
  // residual at one point for one eps with steps h (space) and h (time)
  auto residual_err = [&](const Vec3& x, double eps, double h, double* rnorm2) {
    WKBState st0 = evaluate_state(d, t, x);
    WKBState stp[3], stm[3];
    for (int j = 0; j < 3; ++j) {
      Vec3 xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      stp[j] = evaluate_state(d, t, xp);
      stm[j] = evaluate_state(d, t, xm);
    }
    WKBState stTp = evaluate_state(d, t + h, x);
    WKBState stTm = evaluate_state(d, t - h, x);
    auto vel = [&](const WKBState& s) {
      double th = s.S / eps;
      CVec v;
      for (int i = 0; i < 3; ++i) {
        v.re[i] = -s.phi * s.b[i] * std::sin(th);
        v.im[i] = s.phi * s.b[i] * std::cos(th);
      }
      return v;
    };
    auto mult = [&](const WKBState& s) {  // Q = -eps c phi e^{i theta}
      double th = s.S / eps;
      return std::array<double, 2>{-eps * s.c * s.phi * std::cos(th),
                                   -eps * s.c * s.phi * std::sin(th)};
    };
    CVec dtv, conv, Gv, gQ, R, target;
    CVec vp = vel(stTp), vm = vel(stTm);
    for (int i = 0; i < 3; ++i) {
      dtv.re[i] = (vp.re[i] - vm.re[i]) / (2 * h);
      dtv.im[i] = (vp.im[i] - vm.im[i]) / (2 * h);
    }
    Vec3 u = d.flow.u(t, x);
    Mat3 G = d.flow.grad_u(t, x);
    CVec vc = vel(st0);
    for (int j = 0; j < 3; ++j) {
      CVec a = vel(stp[j]), b = vel(stm[j]);
      for (int i = 0; i < 3; ++i) {
        conv.re[i] += u[j] * (a.re[i] - b.re[i]) / (2 * h);
        conv.im[i] += u[j] * (a.im[i] - b.im[i]) / (2 * h);
      }
      auto qp = mult(stp[j]), qm = mult(stm[j]);
      gQ.re[j] = (qp[0] - qm[0]) / (2 * h);
      gQ.im[j] = (qp[1] - qm[1]) / (2 * h);
    }
    for (int i = 0; i < 3; ++i) {
      Gv.re[i] = dot3(G[i], vc.re);
      Gv.im[i] = dot3(G[i], vc.im);
    }
    double th0 = st0.S / eps, cs = std::cos(th0), sn = std::sin(th0);
    for (int j = 0; j < 3; ++j) {
      double gcphi = (stp[j].c * stp[j].phi - stm[j].c * stm[j].phi) / (2 * h);
      target.re[j] = -eps * gcphi * cs;
      target.im[j] = -eps * gcphi * sn;
    }
    double err2 = 0.0, r2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double rr = dtv.re[i] + conv.re[i] + Gv.re[i] + gQ.re[i];
      double ri = dtv.im[i] + conv.im[i] + Gv.im[i] + gQ.im[i];
      r2 += rr * rr + ri * ri;
      double er = rr - target.re[i], ei = ri - target.im[i];
      err2 += er * er + ei * ei;
    }
    if (rnorm2) *rnorm2 = r2;
    return std::sqrt(err2);
  };

  ResidualCheck rc;
  for (double eps : eps_list) {
    double h = std::min(1e-4, 0.1 * eps * eps);
    double acc = 0.0;
    for (const Vec3& x : xs) {
      double r2 = 0.0;
      residual_err(x, eps, h, &r2);
      acc += r2;
    }
    rc.eps.push_back(eps);
    rc.rnorm.push_back(std::sqrt(acc / n_pts));
  }
  std::vector<double> lx, ly;
  for (size_t i = 0; i < rc.eps.size(); ++i) {
    lx.push_back(std::log(rc.eps[i]));
    ly.push_back(std::log(rc.rnorm[i]));
  }
  rc.slope = fit_slope(lx, ly);
  // pointwise second-order convergence probe at a fixed eps
  double eps_pw = 0.05, h0 = 1e-4;
  int n_pw = std::min<int>(24, n_pts);
  for (int s = 0; s < n_pw; ++s) {
    rc.pointwise_h = std::max(rc.pointwise_h, residual_err(xs[s], eps_pw, h0, nullptr));
    rc.pointwise_2h =
        std::max(rc.pointwise_2h, residual_err(xs[s], eps_pw, 2 * h0, nullptr));
  }
  return rc;
}

double divergence_residual(const WKBData& d, double eps, double t, const Vec3& x,
                           double h, bool with_corrector) {
  double dre = 0.0, dim = 0.0;
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    WaveSample wp = wave_at(d, eps, t, xp), wm = wave_at(d, eps, t, xm);
    if (with_corrector) {
      dre += (wp.vfull_re[j] - wm.vfull_re[j]) / (2 * h);
      dim += (wp.vfull_im[j] - wm.vfull_im[j]) / (2 * h);
    } else {
      dre += (wp.v_re[j] - wm.v_re[j]) / (2 * h);
      dim += (wp.v_im[j] - wm.v_im[j]) / (2 * h);
    }
  }
  return std::sqrt(dre * dre + dim * dim);
}

AxisymCompare axisymmetric_extension(const WKBData& d, const AxisymField& ax,
                                     double t, int n_pts) {
  Rng rng(31);
  auto pts = latin_hypercube(n_pts, 2, rng);
  AxisymCompare cmp;
  int steps = std::max(1, static_cast<int>(std::llround(t / d.ode_dt)));
  double dt = (t > 0.0) ? t / steps : d.ode_dt;
  for (int s = 0; s < n_pts; ++s) {
    double r = d.support_center[0] + d.support_radius * (2 * pts[s][0] - 1);
    double z = d.support_center[2] + d.support_radius * (2 * pts[s][1] - 1);
    Vec3 x3{r, 0.0, z};
    WKBState st = evaluate_state(d, t, x3);
    // poloidal route: backtrace in (r, z), then transport forward
    OdeRhs<2> rz_rhs = [&](double, const std::array<double, 2>& y) {
      return std::array<double, 2>{ax.ur(y[0], y[1]), ax.uz(y[0], y[1])};
    };
    std::array<double, 2> y{r, z};
    for (int k = steps; k > 0; --k) y = rk4_step<2>(rz_rhs, k * dt, y, -dt);
    Vec3 x03{y[0], 0.0, y[1]};
    Vec3 g = d.gradS0(x03), b03 = d.b0(x03);
    AxisymBundle ab = integrate_axisym(ax, y[0], y[1], {g[0], g[2]},
                                       {b03[0], b03[1], b03[2]}, d.S0(x03), t, dt);
    const auto& xi_p = ab.xi.back();
    const auto& b_p = ab.b.back();
    double diff = std::max({std::fabs(st.xi[0] - xi_p[0]),
                            std::fabs(st.xi[2] - xi_p[1]), std::fabs(st.xi[1]),
                            std::fabs(st.b[0] - b_p[0]),
                            std::fabs(st.b[1] - b_p[1]),
                            std::fabs(st.b[2] - b_p[2])});
    cmp.max_state_diff = std::max(cmp.max_state_diff, diff);
    cmp.max_orth = std::max(cmp.max_orth, std::fabs(dot3(st.xi, st.b)));
    if (s < 6) {
      double h = 1e-5;
      for (int j = 0; j < 3; ++j) {
        Vec3 xp = x3, xm = x3;
        xp[j] += h;
        xm[j] -= h;
        double gS = (evaluate_state(d, t, xp).S - evaluate_state(d, t, xm).S) / (2 * h);
        cmp.max_grad_mismatch =
            std::max(cmp.max_grad_mismatch, std::fabs(gS - st.xi[j]));
      }
    }
  }
  return cmp;
}

double envelope_norm(const WKBData& d, double t, double p, int n) {
  LagrangianMarkerCloud probe = build_fields(d, t, 128, 17);
  Vec3 lo = probe.xt.front(), hi = lo;
  for (const Vec3& x : probe.xt)
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], x[i]);
      hi[i] = std::max(hi[i], x[i]);
    }
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec3 x;
        double w = 1.0;
        int idx[3] = {i, j, k};
        for (int a = 0; a < 3; ++a) {
          double pad = 0.08 * (hi[a] - lo[a]);
          double c = 0.5 * (lo[a] + hi[a]), half = 0.5 * (hi[a] - lo[a]) + pad;
          x[a] = c + half * gx[idx[a]];
          w *= gw[idx[a]] * half;
        }
        double phi = d.phi0(backtrace(d, t, x));
        acc += w * std::pow(std::fabs(phi), p);
      }
  return std::pow(acc, 1.0 / p);
}

double envelope_norm0(const WKBData& d, double p, int n) {
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  const Vec3& c = d.support_center;
  double rho = d.support_radius;
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec3 x{c[0] + rho * gx[i], c[1] + rho * gx[j], c[2] + rho * gx[k]};
        acc += gw[i] * gw[j] * gw[k] * rho * rho * rho *
               std::pow(std::fabs(d.phi0(x)), p);
      }
  return std::pow(acc, 1.0 / p);
}

}  // namespace blowlab

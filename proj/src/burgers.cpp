#include "blowlab/burgers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "blowlab/numerics.hpp"

namespace blowlab {

namespace {

double smooth_step(double s) {  // 0 for s<=0, 1 for s>=1, C^inf
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

double refine_max(const std::function<double(double)>& f, double lo, double hi) {
  const double gr = 0.6180339887498949;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > 1e-12) {
    if (fc > fd) {
      hi = d, d = c, fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

double sampled_max(const std::function<double(double)>& f, double L, int n) {
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i <= n; ++i) {
    double x = -L + 2.0 * L * i / n;
    double v = f(x);
    if (v > best) best = v, arg = i;
  }
  double lo = -L + 2.0 * L * std::max(0, arg - 1) / n;
  double hi = -L + 2.0 * L * std::min(n, arg + 1) / n;
  return std::max(best, refine_max(f, lo, hi));
}

}  // namespace

double plateau_bump(double y) {
  double ay = std::fabs(y);
  if (ay <= 0.5) return 1.0;
  if (ay >= 1.0) return 0.0;
  return 1.0 - smooth_step(2.0 * (ay - 0.5));
}

BurgersState default_burgers() {
  BurgersState st;
  st.u0 = [](double x) { return -x * std::exp(-x * x); };
  st.du0 = [](double x) { return (2.0 * x * x - 1.0) * std::exp(-x * x); };
  st.T_star = 1.0;
  st.u_bound = 1.0 / std::sqrt(2.0 * std::exp(1.0));
  return st;
}

BurgersState make_burgers(const std::function<double(double)>& u0,
                          const std::function<double(double)>& du0, double L) {
  BurgersState st;
  st.u0 = u0;
  st.du0 = du0;
  double m = sampled_max([&](double x) { return -du0(x); }, L, 20000);
  st.T_star = (m > 0.0) ? 1.0 / m : std::numeric_limits<double>::infinity();
  st.u_bound = sampled_max([&](double x) { return std::fabs(u0(x)); }, L, 20000);
  return st;
}

CharPoint solve_characteristics(const BurgersState& st, double t, double x) {
  if (t < 0.0 || !(t < st.T_star))
    throw std::invalid_argument("solve_characteristics: t outside [0, T_star)");
  double pad = 1.1 * t * st.u_bound + 1e-9;
  auto g = [&](double a) { return a + t * st.u0(a) - x; };
  std::function<double(double)> dg = [&](double a) { return 1.0 + t * st.du0(a); };
  double a = find_root(g, x - pad, x + pad, 1e-14, &dg);
  double q = 1.0 + t * st.du0(a);
  return {a, st.u0(a), st.du0(a) / q};
}

double origin_slope(const BurgersState& st, double t) {
  return solve_characteristics(st, t, 0.0).ux;
}

double trapping_radius(const BurgersState& st, double T) {
  if (!(T >= 0.0) || !(T < st.T_star))
    throw std::invalid_argument("trapping_radius: T outside [0, T_star)");
  const int nt = 64, na = 128;
  std::vector<double> ux0(nt);
  for (int it = 0; it < nt; ++it) ux0[it] = origin_slope(st, T * it / (nt - 1));
  for (int k = 0; k <= 40; ++k) {
    double d = std::ldexp(1.0, -k);
    bool ok = true;
    for (int it = 0; it < nt && ok; ++it) {
      double t = T * it / (nt - 1);
      for (int ia = 0; ia <= na; ++ia) {
        double a = -d + 2.0 * d * ia / na;
        double ux = st.du0(a) / (1.0 + t * st.du0(a));
        if (!(ux <= 0.5 * ux0[it] + 1e-14)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return d;
  }
  return 0.0;
}

LinearizedBurgers linearized_evolve(const BurgersState& st,
                                    const std::function<double(double)>& v0,
                                    double a_lo, double a_hi, double t, int n,
                                    double trap_delta) {
  if (!(a_hi > a_lo) || n < 2) throw std::invalid_argument("linearized_evolve: bad range");
  if (t < 0.0 || !(t < st.T_star))
    throw std::invalid_argument("linearized_evolve: t outside [0, T_star)");
  LinearizedBurgers out;
  out.a.resize(n);
  out.xt.resize(n);
  out.vt.resize(n);
  for (int i = 0; i < n; ++i) {
    double a = a_lo + (a_hi - a_lo) * i / (n - 1);
    double q = 1.0 + t * st.du0(a);
    out.a[i] = a;
    out.xt[i] = a + t * st.u0(a);
    out.vt[i] = v0(a) / q;
    if (trap_delta > 0.0 && std::fabs(out.vt[i]) > 0.0 &&
        std::fabs(out.xt[i]) > trap_delta)
      out.support_escaped = true;
  }
  return out;
}

double growth_factor_lp(const BurgersState& st,
                        const std::function<double(double)>& v0,
                        double a_lo, double a_hi, double t, double p) {
  if (t < 0.0 || !(t < st.T_star))
    throw std::invalid_argument("growth_factor_lp: t outside [0, T_star)");
  bool inf = std::isinf(p);
  if (!inf && !(p >= 1.0))
    throw std::invalid_argument("growth_factor_lp: p must be >= 1 or inf");
  if (inf) {
    double m0 = 0.0, mt = 0.0;
    const int n = 1 << 16;
    for (int i = 0; i <= n; ++i) {
      double a = a_lo + (a_hi - a_lo) * i / n;
      double w0 = std::fabs(v0(a));
      m0 = std::max(m0, w0);
      mt = std::max(mt, w0 / std::fabs(1.0 + t * st.du0(a)));
    }
    if (!(m0 > 0.0)) throw std::invalid_argument("growth_factor_lp: zero datum");
    return mt / m0;
  }
  std::vector<double> gx, gw;
  double n0 = 0.0, nt = 0.0;
  const int panels = 256;
  for (int c = 0; c < panels; ++c) {
    double lo = a_lo + (a_hi - a_lo) * c / panels;
    double hi = a_lo + (a_hi - a_lo) * (c + 1) / panels;
    gauss_legendre_ab(8, lo, hi, gx, gw);
    for (size_t q = 0; q < gx.size(); ++q) {
      double w0 = std::pow(std::fabs(v0(gx[q])), p);
      double m = 1.0 + t * st.du0(gx[q]);
      n0 += gw[q] * w0;
      nt += gw[q] * w0 * std::pow(m, 1.0 - p);
    }
  }
  if (!(n0 > 0.0)) throw std::invalid_argument("growth_factor_lp: zero datum");
  return std::pow(nt / n0, 1.0 / p);
}

double eulerian_l1(const BurgersState& st, const std::function<double(double)>& v0,
                   double a_lo, double a_hi, double t) {
  double x_lo = a_lo + t * st.u0(a_lo), x_hi = a_hi + t * st.u0(a_hi);
  std::vector<double> gx, gw;
  double acc = 0.0;
  const int panels = 512;
  for (int c = 0; c < panels; ++c) {
    double lo = x_lo + (x_hi - x_lo) * c / panels;
    double hi = x_lo + (x_hi - x_lo) * (c + 1) / panels;
    gauss_legendre_ab(8, lo, hi, gx, gw);
    for (size_t q = 0; q < gx.size(); ++q) {
      CharPoint cp = solve_characteristics(st, t, gx[q]);
      double qq = 1.0 + t * st.du0(cp.a);
      acc += gw[q] * std::fabs(v0(cp.a) / qq);
    }
  }
  return acc;
}

double growth_bound_lp(const BurgersState& st, double T, double p) {
  if (!(T >= 0.0) || !(T < st.T_star))
    throw std::invalid_argument("growth_bound_lp: T outside [0, T_star)");
  bool inf = std::isinf(p);
  if (!inf && !(p >= 1.0))
    throw std::invalid_argument("growth_bound_lp: p must be >= 1 or inf");
  // integrate -u_x(t,0) with nodes clustered toward the blowup time:
  // t = T_star (1 - e^{-s})
  double s_max = -std::log(1.0 - T / st.T_star);
  std::vector<double> gx, gw;
  gauss_legendre_ab(48, 0.0, s_max, gx, gw);
  double I = 0.0;
  for (size_t q = 0; q < gx.size(); ++q) {
    double t = st.T_star * (1.0 - std::exp(-gx[q]));
    I += gw[q] * (-origin_slope(st, t)) * st.T_star * std::exp(-gx[q]);
  }
  double ip = inf ? 0.0 : 1.0 / p;
  return std::exp(0.5 * (1.0 - ip) * I);
}

}  // namespace blowlab

#include "blowlab/operators.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "blowlab/numerics.hpp"

namespace blowlab {

namespace {

PolarField with_shifted_hooks(const PolarField& f, int di, int dj) {
  PolarField out(f.grid);
  if (f.deriv) {
    auto d = f.deriv;
    out.deriv = [d, di, dj](int i, int j, double R, double b) {
      return d(i + di, j + dj, R, b);
    };
    out.eval = [d, di, dj](double R, double b) { return d(di, dj, R, b); };
  }
  return out;
}

PolarField diff_DR_nodal(const PolarField& f, int order) {
  const PolarGrid& g = *f.grid;
  if (g.nr() < 8) throw std::invalid_argument("diff_DR: need >= 8 radial nodes");
  PolarField out(f.grid);
  // D_R = d/dx with x = log R, so pure powers reduce to x-derivatives.
  std::vector<double> row(g.nr()), drow;
  for (int j = 0; j < g.nb(); ++j) {
    for (int i = 0; i < g.nr(); ++i) row[i] = f.at(i, j);
    drow = fd_derivative(g.logR, row, order);
    for (int i = 0; i < g.nr(); ++i) out.at(i, j) = drow[i];
  }
  return out;
}

PolarField diff_Dbeta_nodal(const PolarField& f) {
  const PolarGrid& g = *f.grid;
  if (g.nb() < 8) throw std::invalid_argument("diff_Dbeta: need >= 8 angular nodes");
  PolarField out(f.grid);
  std::vector<double> col(g.nb()), dcol;
  for (int i = 0; i < g.nr(); ++i) {
    for (int j = 0; j < g.nb(); ++j) col[j] = f.at(i, j);
    dcol = fd_derivative(g.beta, col, 1);
    for (int j = 0; j < g.nb(); ++j)
      out.at(i, j) = std::sin(2.0 * g.beta[j]) * dcol[j];
  }
  return out;
}

// Angular quadrature sum  sum_j w_j sin(2 b_j) v(i, j)  for each radial node.
std::vector<double> angular_sums(const PolarField& f) {
  const PolarGrid& g = *f.grid;
  std::vector<double> s(g.nr(), 0.0);
  for (int i = 0; i < g.nr(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < g.nb(); ++j)
      acc += g.wbeta[j] * std::sin(2.0 * g.beta[j]) * f.at(i, j);
    s[i] = acc;
  }
  return s;
}

// One Gauss cell of int f(e^x, b_j)-weighted angular sum over x in [xa, xb].
double cell_integral_eval(const PolarField& f, double xa, double xb) {
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  const PolarGrid& g = *f.grid;
  double mid = 0.5 * (xa + xb), half = 0.5 * (xb - xa);
  double acc = 0.0;
  for (int q = 0; q < 4; ++q) {
    double R = std::exp(mid + half * gx[q]);
    double ang = 0.0;
    for (int j = 0; j < g.nb(); ++j)
      ang += g.wbeta[j] * std::sin(2.0 * g.beta[j]) * f.eval(R, g.beta[j]);
    acc += gw[q] * half * ang;
  }
  return acc;
}

// Same but for the piece below R_min, integrated in R (handles at_R = 0).
double head_integral_eval(const PolarField& f, double ra, double rb) {
  std::vector<double> gx, gw;
  gauss_legendre_ab(8, ra, rb, gx, gw);
  const PolarGrid& g = *f.grid;
  double acc = 0.0;
  for (size_t q = 0; q < gx.size(); ++q) {
    double ang = 0.0;
    for (int j = 0; j < g.nb(); ++j)
      ang += g.wbeta[j] * std::sin(2.0 * g.beta[j]) * f.eval(gx[q], g.beta[j]);
    acc += gw[q] * ang / gx[q];
  }
  return acc;
}

// ---- closed-form machinery for the profile ----

// Sum of terms c R^m / (1+R)^k, closed under D_R.
struct RadialRk {
  struct Term {
    double c;
    int m, k;
  };
  std::vector<Term> terms;
  double eval(double R) const {
    double acc = 0.0;
    for (const Term& t : terms)
      acc += t.c * std::pow(R, t.m) / std::pow(1.0 + R, t.k);
    return acc;
  }
  RadialRk DR() const {
    RadialRk out;
    for (const Term& t : terms) {
      if (t.m != 0) out.terms.push_back({t.c * t.m, t.m, t.k});
      out.terms.push_back({-t.c * t.k, t.m + 1, t.k + 1});
    }
    return out;
  }
};

// P(s) cos^a(b) with s = sin^2(b); D_beta maps P -> 4s(1-s)P' - 2as P.
struct AngularGamma {
  std::vector<double> P;
  double a = 0.0;
  double eval(double b) const {
    double s = std::sin(b) * std::sin(b);
    double p = 0.0;
    for (size_t i = P.size(); i-- > 0;) p = p * s + P[i];
    return p * std::pow(std::cos(b), a);
  }
  AngularGamma Dbeta() const {
    AngularGamma out;
    out.a = a;
    out.P.assign(P.size() + 2, 0.0);
    for (size_t i = 1; i < P.size(); ++i) {
      out.P[i] += 4.0 * i * P[i];          // 4 s P'
      out.P[i + 1] -= 4.0 * i * P[i];      // -4 s^2 P'
    }
    for (size_t i = 0; i < P.size(); ++i) out.P[i + 1] -= 2.0 * a * P[i];
    while (out.P.size() > 1 && out.P.back() == 0.0) out.P.pop_back();
    return out;
  }
};

constexpr int kMaxHookOrder = 8;

PolarField separable_field(GridPtr grid, const RadialRk& rad,
                           const AngularGamma& ang,
                           std::function<double(double)> tail) {
  auto rtab = std::make_shared<std::vector<RadialRk>>();
  auto atab = std::make_shared<std::vector<AngularGamma>>();
  rtab->push_back(rad);
  atab->push_back(ang);
  for (int k = 0; k < kMaxHookOrder; ++k) {
    rtab->push_back(rtab->back().DR());
    atab->push_back(atab->back().Dbeta());
  }
  PolarField f(grid);
  f.deriv = [rtab, atab](int i, int j, double R, double b) {
    if (i < 0 || j < 0 || i > kMaxHookOrder || j > kMaxHookOrder)
      throw std::invalid_argument("profile derivative order out of range");
    return (*rtab)[i].eval(R) * (*atab)[j].eval(b);
  };
  f.eval = [rtab, atab](double R, double b) {
    return (*rtab)[0].eval(R) * (*atab)[0].eval(b);
  };
  f.separable = true;
  f.radial = [rtab](double R) { return (*rtab)[0].eval(R); };
  f.angular = [atab](double b) { return (*atab)[0].eval(b); };
  f.radial_tail = std::move(tail);
  const PolarGrid& g = *grid;
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.nb(); ++j) f.at(i, j) = f.eval(g.R[i], g.beta[j]);
  return f;
}

}  // namespace

PolarField diff_DR(const PolarField& f, int order) {
  if (order < 0 || order > 5)
    throw std::invalid_argument("diff_DR: order must be in [0, 5]");
  if (order == 0) return f;
  if (f.deriv) {
    PolarField out = with_shifted_hooks(f, order, 0);
    const PolarGrid& g = *f.grid;
    for (int i = 0; i < g.nr(); ++i)
      for (int j = 0; j < g.nb(); ++j) out.at(i, j) = f.deriv(order, 0, g.R[i], g.beta[j]);
    return out;
  }
  if (order <= 2) return diff_DR_nodal(f, order);
  return diff_DR_nodal(diff_DR(f, order - 1), 1);
}

PolarField diff_Dbeta(const PolarField& f, int order) {
  if (order < 0 || order > 5)
    throw std::invalid_argument("diff_Dbeta: order must be in [0, 5]");
  if (order == 0) return f;
  if (f.deriv) {
    PolarField out = with_shifted_hooks(f, 0, order);
    const PolarGrid& g = *f.grid;
    for (int i = 0; i < g.nr(); ++i)
      for (int j = 0; j < g.nb(); ++j) out.at(i, j) = f.deriv(0, order, g.R[i], g.beta[j]);
    return out;
  }
  PolarField out = diff_Dbeta_nodal(f);
  for (int k = 1; k < order; ++k) out = diff_Dbeta_nodal(out);
  return out;
}

PolarField diff_mixed(const PolarField& f, int i, int j) {
  if (f.deriv) {
    PolarField out = with_shifted_hooks(f, i, j);
    const PolarGrid& g = *f.grid;
    for (int a = 0; a < g.nr(); ++a)
      for (int b = 0; b < g.nb(); ++b) out.at(a, b) = f.deriv(i, j, g.R[a], g.beta[b]);
    return out;
  }
  return diff_DR(diff_Dbeta(f, j), i);
}

double l12(const PolarField& omega, double at_R) {
  const PolarGrid& g = *omega.grid;
  if (at_R < 0.0) throw std::invalid_argument("l12: at_R must be >= 0");
  if (at_R > g.R.back() * (1.0 + 1e-12))
    throw std::invalid_argument("l12: at_R beyond grid R_max");
  if (omega.separable && omega.radial_tail) {
    double ang = 0.0;
    for (int j = 0; j < g.nb(); ++j)
      ang += g.wbeta[j] * std::sin(2.0 * g.beta[j]) * omega.angular(g.beta[j]);
    return ang * omega.radial_tail(at_R);
  }
  if (omega.eval) {
    double acc = 0.0;
    double xq = (at_R > 0.0) ? std::log(at_R) : g.logR.front();
    for (int i = g.nr() - 2; i >= 0; --i) {
      double xa = g.logR[i], xb = g.logR[i + 1];
      if (xb <= xq) break;
      acc += cell_integral_eval(omega, std::max(xa, xq), xb);
    }
    if (at_R < g.R.front())
      acc += head_integral_eval(omega, std::max(at_R, 0.0), g.R.front());
    return acc;
  }
  std::vector<double> F = l12_all_nodes(omega);
  if (at_R <= g.R.front()) return F.front();
  // linear interpolation in log R between cumulative values
  double xq = std::log(at_R);
  int i = int((xq - g.logR.front()) / g.h_logR);
  if (i >= g.nr() - 1) return F.back();
  double t = (xq - g.logR[i]) / g.h_logR;
  return (1.0 - t) * F[i] + t * F[i + 1];
}

std::vector<double> l12_all_nodes(const PolarField& omega) {
  const PolarGrid& g = *omega.grid;
  std::vector<double> F(g.nr(), 0.0);
  if (omega.separable && omega.radial_tail) {
    double ang = 0.0;
    for (int j = 0; j < g.nb(); ++j)
      ang += g.wbeta[j] * std::sin(2.0 * g.beta[j]) * omega.angular(g.beta[j]);
    for (int i = 0; i < g.nr(); ++i) F[i] = ang * omega.radial_tail(g.R[i]);
    return F;
  }
  if (omega.eval) {
    for (int i = g.nr() - 2; i >= 0; --i)
      F[i] = F[i + 1] + cell_integral_eval(omega, g.logR[i], g.logR[i + 1]);
    return F;
  }
  std::vector<double> S = angular_sums(omega);
  for (int i = g.nr() - 2; i >= 0; --i)
    F[i] = F[i + 1] + 0.5 * (S[i] + S[i + 1]) * g.h_logR;
  return F;
}

double l12_tilde(const PolarField& omega, double at_R) {
  return l12(omega, at_R) - l12(omega, 0.0);
}

double l_operator_r3(const PolarField& omega_theta) {
  const PolarGrid& g = *omega_theta.grid;
  double a = g.alpha.value;
  for (int j = 0; j < g.nb(); ++j)
    if (omega_theta.at(0, j) != 0.0)
      throw std::invalid_argument(
          "l_operator_r3: support reaches the inner radial boundary");
  double acc = 0.0;
  if (omega_theta.eval) {
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
    for (int i = 0; i < g.nr() - 1; ++i) {
      double mid = 0.5 * (g.logR[i] + g.logR[i + 1]), half = 0.5 * g.h_logR;
      for (int q = 0; q < 4; ++q) {
        double R = std::exp(mid + half * gx[q]);
        double ang = 0.0;
        for (int j = 0; j < g.nb(); ++j) {
          double cb = std::cos(g.beta[j]);
          ang += g.wbeta[j] * cb * cb * std::sin(g.beta[j]) *
                 omega_theta.eval(R, g.beta[j]);
        }
        acc += gw[q] * half * ang;
      }
    }
  } else {
    for (int i = 0; i < g.nr(); ++i) {
      double wx = g.wR[i] / g.R[i];
      double ang = 0.0;
      for (int j = 0; j < g.nb(); ++j) {
        double cb = std::cos(g.beta[j]);
        ang += g.wbeta[j] * cb * cb * std::sin(g.beta[j]) * omega_theta.at(i, j);
      }
      acc += wx * ang;
    }
  }
  return acc / a;
}

double uzz_origin(const PolarField& omega_theta) {
  return 3.0 * l_operator_r3(omega_theta);
}

double urr_origin(const PolarField& omega_theta) {
  return -1.5 * l_operator_r3(omega_theta);
}

ProfileFields profile_fields(Alpha alpha, GridPtr grid) {
  const PolarGrid& g = *grid;
  double a = alpha.value;
  AngularGamma gamma{{1.0}, a};
  double c = 0.0;
  for (int j = 0; j < g.nb(); ++j)
    c += g.wbeta[j] * gamma.eval(g.beta[j]) * std::sin(2.0 * g.beta[j]);
  c *= 2.0 / kPi;

  ProfileFields out;
  out.c = c;
  out.c_l_bar = 1.0 / a + 3.0;
  out.c_omega_bar = -1.0;
  double s = a / c;
  RadialRk rw{{{3.0 * s, 1, 2}}};
  RadialRk re{{{6.0 * s, 1, 3}}};
  out.omega_bar = separable_field(
      grid, rw, gamma, [s](double R) { return 3.0 * s / (1.0 + R); });
  out.eta_bar = separable_field(
      grid, re, gamma,
      [s](double R) { return 3.0 * s / ((1.0 + R) * (1.0 + R)); });
  return out;
}

NormalizationPair normalization(const PolarField& omega_pert, Alpha alpha) {
  double a = alpha.value;
  double co = -2.0 / (kPi * a) * l12(omega_pert, 0.0);
  return {co, (1.0 - a) / a * co};
}

}  // namespace blowlab

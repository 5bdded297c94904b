#include "blowlab/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "blowlab/numerics.hpp"
#include "blowlab/operators.hpp"

namespace blowlab {

namespace {

constexpr double kOverflowGuard = 1e12;

[[noreturn]] void overflow_at(double R, double b) {
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "weighted_norm: non-integrable weight/field combination near "
                "R=%.6g beta=%.6g",
                R, b);
  throw std::runtime_error(msg);
}

double sup_nodal(const PolarField& f,
                 const std::function<double(double, double)>& w) {
  const PolarGrid& g = *f.grid;
  double m = 0.0;
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.nb(); ++j) {
      double t = std::fabs(f.at(i, j));
      if (w) t *= w(g.R[i], g.beta[j]);
      if (t > m) m = t;
    }
  return m;
}

double cfg_coef(const std::function<double(int, int)>& f, int i, int j) {
  return f ? f(i, j) : 1.0;
}

}  // namespace

double l2_weighted_sq(const PolarField& g, WeightKind w) {
  const PolarGrid& gr = *g.grid;
  WeightSpec spec{w, gr.alpha};
  if (g.eval) {
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
    double acc = 0.0;
    for (int i = 0; i < gr.nr() - 1; ++i) {
      double mid = 0.5 * (gr.logR[i] + gr.logR[i + 1]), half = 0.5 * gr.h_logR;
      for (int q = 0; q < 4; ++q) {
        double R = std::exp(mid + half * gx[q]);
        double slice = beta_integral_singular([&](double b) {
          double wv = weight_eval(spec, R, b);
          double val = g.eval(R, b);
          double t = wv * val * val;
          if (t > kOverflowGuard) overflow_at(R, b);
          return t;
        });
        acc += gw[q] * half * R * slice;  // dR = R dx
      }
    }
    return acc;
  }
  double acc = 0.0;
  for (int i = 0; i < gr.nr(); ++i)
    for (int j = 0; j < gr.nb(); ++j) {
      double wv = weight_eval(spec, gr.R[i], gr.beta[j]);
      double val = g.at(i, j);
      double t = wv * val * val;
      if (t > kOverflowGuard) overflow_at(gr.R[i], gr.beta[j]);
      acc += gr.wR[i] * gr.wbeta[j] * t;
    }
  return acc;
}

double weighted_norm(const PolarField& f, NormKind kind, int k) {
  if (k < 0 || k > 5)
    throw std::invalid_argument("weighted_norm: order must be in [0, 5]");
  const Alpha a = f.grid->alpha;
  switch (kind) {
    case NormKind::Hk_phi:
    case NormKind::Hk_psi: {
      WeightKind w1 = (kind == NormKind::Hk_phi) ? WeightKind::phi1 : WeightKind::psi1;
      WeightKind w2 = (kind == NormKind::Hk_phi) ? WeightKind::phi2 : WeightKind::psi2;
      double total = 0.0;
      for (int j = 0; j <= k; ++j)
        total += std::sqrt(l2_weighted_sq(diff_DR(f, j), w1));
      for (int i = 0; i + 1 <= k; ++i)
        for (int j = 0; i + j + 1 <= k; ++j)
          total += std::sqrt(l2_weighted_sq(diff_mixed(f, i, j + 1), w2));
      return total;
    }
    case NormKind::Ck_sup: {
      double total = sup_nodal(f, nullptr);
      auto w1 = [&](double R, double b) {
        return weight_eval({WeightKind::vphi1, a}, R, b);
      };
      auto w2 = [&](double R, double b) {
        return weight_eval({WeightKind::vphi2, a}, R, b);
      };
      auto w12 = [&](double R, double b) { return w1(R, b) + w2(R, b); };
      for (int i = 1; i <= k; ++i) {
        total += sup_nodal(diff_DR(f, i), w1);
        total += sup_nodal(diff_Dbeta(f, i), w2);
      }
      for (int i = 1; i <= k; ++i)
        for (int j = 1; i + j <= k; ++j)
          total += sup_nodal(diff_mixed(f, i, j), w12);
      return total;
    }
    case NormKind::Wl_sup: {
      double av = a.value;
      auto wl = [av](double R, double b) {
        (void)R;
        double s2 = std::sin(2.0 * b);
        return std::pow(s2, -av / 5.0) / (av / 10.0 + s2);
      };
      double total = 0.0;
      for (int i = 0; i <= k; ++i)
        for (int j = 1; i + j <= k; ++j)
          total += sup_nodal(diff_mixed(f, i, j), wl);
      for (int i = 0; i <= k; ++i) total += sup_nodal(diff_DR(f, i), nullptr);
      return total;
    }
  }
  throw std::logic_error("weighted_norm: unknown kind");
}

double energy_e1(const PolarField& omega, const PolarField& eta,
                 const PolarField& xi, double c_profile,
                 const EnergyConfig& cfg) {
  if (!(c_profile > 0.0))
    throw std::invalid_argument("energy_e1: c_profile must be positive");
  double nonlocal = l12(omega, 0.0);
  double e2 = l2_weighted_sq(omega, WeightKind::phi0) +
              l2_weighted_sq(eta, WeightKind::psi0) +
              81.0 / (4.0 * kPi * c_profile) * nonlocal * nonlocal +
              cfg.mu1 * (l2_weighted_sq(diff_Dbeta(omega, 1), WeightKind::phi2) +
                         l2_weighted_sq(diff_Dbeta(eta, 1), WeightKind::phi2)) +
              l2_weighted_sq(xi, WeightKind::psi1) +
              cfg.mu2 * (l2_weighted_sq(omega, WeightKind::phi1) +
                         l2_weighted_sq(eta, WeightKind::phi1)) +
              l2_weighted_sq(diff_Dbeta(xi, 1), WeightKind::psi2) +
              cfg.mu3 * (l2_weighted_sq(diff_DR(omega, 1), WeightKind::phi1) +
                         l2_weighted_sq(diff_DR(eta, 1), WeightKind::phi1) +
                         l2_weighted_sq(diff_DR(xi, 1), WeightKind::psi1));
  return std::sqrt(e2);
}

double energy_ek(int k, const PolarField& omega, const PolarField& eta,
                 const PolarField& xi, double c_profile,
                 const EnergyConfig& cfg) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("energy_ek: order must be in [1, 3]");
  double e1 = energy_e1(omega, eta, xi, c_profile, cfg);
  double e2 = e1 * e1;
  for (int i = 2; i <= k; ++i)
    for (int j = 0; j <= i; ++j) {
      // Pure radial strings take the first-family weight, anything with an
      // angular factor takes the second-family one.
      WeightKind p = (i == j) ? WeightKind::phi1 : WeightKind::phi2;
      WeightKind q = (i == j) ? WeightKind::psi1 : WeightKind::psi2;
      double m = cfg_coef(cfg.mu_high, i, j);
      e2 += m * (l2_weighted_sq(diff_mixed(omega, j, i - j), p) +
                 l2_weighted_sq(diff_mixed(eta, j, i - j), p) +
                 l2_weighted_sq(diff_mixed(xi, j, i - j), q));
    }
  return std::sqrt(e2);
}

double energy_ck_infty(int k, const PolarField& xi, const EnergyConfig& cfg) {
  if (k < 0 || k > 3)
    throw std::invalid_argument("energy_ck_infty: order must be in [0, 3]");
  const Alpha a = xi.grid->alpha;
  double s0 = sup_nodal(xi, nullptr);
  double e2 = s0 * s0;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) {
      if (i == 0 && j == 0) continue;
      auto w = [&](double R, double b) { return weight_phi_ij(a, i, j, R, b); };
      double s = sup_nodal(diff_mixed(xi, i, j), w);
      e2 += cfg_coef(cfg.nu, i, j) * s * s;
    }
  return std::sqrt(e2);
}

}  // namespace blowlab

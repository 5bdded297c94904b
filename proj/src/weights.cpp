#include "blowlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowlab/numerics.hpp"

namespace blowlab {

double weight_eval(const WeightSpec& w, double R, double beta) {
  const double a = w.alpha.value;
  const double s2 = std::sin(2.0 * beta);
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double q = (1.0 + R) / R;
  switch (w.kind) {
    case WeightKind::psi0: {
      double p3 = (1.0 + R) * (1.0 + R) * (1.0 + R);
      double p4 = p3 * (1.0 + R);
      return 3.0 / 16.0 * (p3 / (R * R * R * R) + 1.5 * p4 / (R * R * R)) *
             std::pow(cb, -a);
    }
    case WeightKind::phi0:
      return q * q * q * s2;
    case WeightKind::phi1:
      return q * q * q * q * std::pow(s2, -w.sigma());
    case WeightKind::phi2:
      return q * q * q * q * std::pow(s2, -w.gamma());
    case WeightKind::psi1:
      return q * q * q * q * std::pow(sb * cb, -w.sigma());
    case WeightKind::psi2:
      return q * q * q * q * std::pow(sb, -w.sigma()) * std::pow(cb, -w.gamma());
    case WeightKind::vphi1:
      return q;
    case WeightKind::vphi2:
      return 1.0 + std::pow(R * std::pow(s2, a), -1.0 / 40.0);
  }
  return 0.0;
}

double weight_phi_ij(Alpha alpha, int i, int j, double R, double beta) {
  double w = 0.0;
  if (i >= 1) w += weight_eval({WeightKind::vphi1, alpha}, R, beta);
  if (j >= 1) w += weight_eval({WeightKind::vphi2, alpha}, R, beta);
  return w;
}

double beta_integral_singular(const std::function<double(double)>& h, int pts) {
  // Dyadic panels toward each endpoint.  The integrands handled here behave
  // like a power b^{-s} with s < 1 near the ends, so the per-panel integrals
  // decay geometrically; the remainder below the deepest panel is summed from
  // the measured decay ratio.  A non-decaying ratio means the combination is
  // not integrable.
  // Depth is capped: below b ~ 5e-8 the mirrored side evaluates sin(2beta)
  // next to its zero at pi, where argument rounding costs ~2e-16/b of
  // relative accuracy and would pollute the measured decay ratio.
  const int per_panel = std::clamp(pts / 8, 6, 16);
  const int levels = 24;
  std::vector<double> gx, gw;
  gauss_legendre(per_panel, gx, gw);
  double total = 0.0;
  for (int side = 0; side < 2; ++side) {
    double hi = kPi / 4.0;
    double prev = 0.0, last = 0.0;
    for (int k = 0; k < levels; ++k) {
      const double lo = 0.5 * hi;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      double panel = 0.0;
      for (int q = 0; q < per_panel; ++q) {
        const double b = mid + half * gx[q];
        panel += gw[q] * half * (side == 0 ? h(b) : h(kPi / 2.0 - b));
      }
      total += panel;
      prev = last;
      last = panel;
      hi = lo;
    }
    if (last != 0.0 && prev != 0.0) {
      const double rho = last / prev;
      if (rho >= 0.999)
        throw std::runtime_error(
            "beta_integral_singular: endpoint behavior is not integrable");
      if (rho > 0.0) total += last * rho / (1.0 - rho);
    }
  }
  return total;
}

}  // namespace blowlab

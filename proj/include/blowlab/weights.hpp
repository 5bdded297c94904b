// Singular weight families used by the weighted norms and energies.
#pragma once

#include <functional>

#include "blowlab/grid.hpp"

namespace blowlab {

enum class WeightKind {
  psi0,
  phi0,   // (1+R)^3/R^3 sin(2b)
  phi1,   // (1+R)^4/R^4 sin(2b)^{-sigma}
  phi2,   // (1+R)^4/R^4 sin(2b)^{-gamma}
  psi1,   // (1+R)^4/R^4 (sin b cos b)^{-sigma}
  psi2,   // (1+R)^4/R^4 sin b^{-sigma} cos b^{-gamma}
  vphi1,  // (1+R)/R      (sup-norm weight)
  vphi2,  // 1 + (R sin(2b)^alpha)^{-1/40}
};

struct WeightSpec {
  WeightKind kind;
  Alpha alpha;
  double sigma() const { return 99.0 / 100.0; }
  double gamma() const { return 1.0 + alpha.value / 10.0; }
};

double weight_eval(const WeightSpec& w, double R, double beta);

// Sup-norm weight for mixed derivative counts (i D_R's, j D_beta's):
// phi_ij = [i>=1] vphi1 + [j>=1] vphi2.
double weight_phi_ij(Alpha alpha, int i, int j, double R, double beta);

// Integral of h over (0, pi/2) robust to algebraic endpoint singularities as
// strong as sin(2b)^{-0.99}: splits at pi/4 and substitutes b ~ u^100 at each
// end, then Gauss-Legendre with pts nodes per panel.
double beta_integral_singular(const std::function<double(double)>& h, int pts = 64);

}  // namespace blowlab

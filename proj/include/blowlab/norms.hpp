// Weighted norms and the coercive energy functionals built from them.
#pragma once

#include <functional>

#include "blowlab/grid.hpp"
#include "blowlab/weights.hpp"

namespace blowlab {

enum class NormKind {
  Hk_phi,  // L2 ladder, first-family weights (vorticity-type fields)
  Hk_psi,  // L2 ladder, second-family weights (xi-type fields)
  Ck_sup,  // weighted sup ladder
  Wl_sup,  // angular-layer sup ladder
};

// Norm of order k (k <= 5). L2 pieces use exact-derivative evaluators plus a
// singularity-absorbing substitution quadrature in beta when the field carries
// hooks, and plain nodal quadrature otherwise. Sup pieces are nodal.
double weighted_norm(const PolarField& f, NormKind kind, int k);

// Square of the weighted L2 integral  int w(R,b) g(R,b)^2 dR db.
double l2_weighted_sq(const PolarField& g, WeightKind w);

struct EnergyConfig {
  double mu1 = 1.0, mu2 = 1.0, mu3 = 1.0;
  // Coefficients for the order >= 2 ladder and the sup-energy ladder.
  // Null means the constant 1.
  std::function<double(int, int)> mu_high;
  std::function<double(int, int)> nu;
};

// Coercive first-order energy of a perturbation triple. c_profile is the
// profile normalization constant entering the nonlocal term.
double energy_e1(const PolarField& omega, const PolarField& eta,
                 const PolarField& xi, double c_profile,
                 const EnergyConfig& cfg = {});

// Higher-order extension, 1 <= k <= 3.
double energy_ek(int k, const PolarField& omega, const PolarField& eta,
                 const PolarField& xi, double c_profile,
                 const EnergyConfig& cfg = {});

// Weighted sup-energy of the stratification component, k <= 3.
double energy_ck_infty(int k, const PolarField& xi, const EnergyConfig& cfg = {});

}  // namespace blowlab

// Differential operators D_R, D_beta, the tail integral operators, and the
// approximate steady-state profile.
#pragma once

#include <vector>

#include "blowlab/grid.hpp"

namespace blowlab {

// (R d/dR)^order. Uses the field's exact derivative hook when present, else
// 4th-order finite differences in log R. order <= 5.
PolarField diff_DR(const PolarField& f, int order);

// (sin(2b) d/db)^order, same conventions.
PolarField diff_Dbeta(const PolarField& f, int order);

// D_R^i D_beta^j f.
PolarField diff_mixed(const PolarField& f, int i, int j);

// Tail integral int_R^inf int_0^{pi/2} sin(2b) f(s,b)/s ds db.
// Separable fields with an exact radial tail are evaluated in closed form;
// evaluator-backed fields use per-cell Gauss quadrature in log R; plain nodal
// fields use the grid rule. Beyond R_max: exact tail if available, else zero.
double l12(const PolarField& omega, double at_R);
std::vector<double> l12_all_nodes(const PolarField& omega);
double l12_tilde(const PolarField& omega, double at_R);  // l12(R) - l12(0)

// L(f)(0) = int_0^inf int_0^{pi/2} f cos^2(b) sin(b) / rho  drho db for a field
// stored in (R, b) with R = rho^alpha (so drho/rho = dR/(alpha R)).
// Rejects fields whose support touches rho = 0.
double l_operator_r3(const PolarField& omega_theta);
// Origin velocity-gradient values for z-odd omega_theta, from the Biot-Savart
// derivation: du3/dz(0) = 3 L, and the trace-free axisymmetric ratio -1/2.
double uzz_origin(const PolarField& omega_theta);
double urr_origin(const PolarField& omega_theta);

struct ProfileFields {
  PolarField omega_bar;  // (a/c) cos^a(b) 3R/(1+R)^2, exact derivative hooks
  PolarField eta_bar;    // (a/c) cos^a(b) 6R/(1+R)^3
  double c = 0.0;        // (2/pi) int_0^{pi/2} cos^a(b) sin(2b) db by quadrature
  double c_l_bar = 0.0;  // 1/alpha + 3
  double c_omega_bar = -1.0;
};
ProfileFields profile_fields(Alpha alpha, GridPtr grid);

struct NormalizationPair {
  double c_omega, c_l;
};
// c_omega = -(2/(pi a)) l12(omega)(0), c_l = ((1-a)/a) c_omega.
NormalizationPair normalization(const PolarField& omega_pert, Alpha alpha);

}  // namespace blowlab

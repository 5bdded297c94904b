// Sparse-direct solver for the anisotropic stream-function equation in
// (log R, beta), velocity reconstruction, and convergence diagnostics.
#pragma once

#include <functional>
#include <vector>

#include "blowlab/grid.hpp"

namespace blowlab {

// -a^2 Psi_xx - 4a Psi_x - Psi_bb - 4 Psi  (+ cylinder correction terms when
// C_l > 0, smoothly cut off at radius scale delta_cut * C_l^{-alpha}) = source.
// Dirichlet: zero at beta = 0, pi/2; radial ends pinned to bc(R, beta), which
// defaults to the separable tail asymptote sin(2b) l12(source)(R) / (pi a).
struct EllipticProblem {
  GridPtr grid;
  PolarField source;
  double C_l = 0.0;
  double delta_cut = 1.0 / 16.0;
  std::function<double(double R, double beta)> bc;  // optional
};

PolarField solve_elliptic(const EllipticProblem& prob);

// Psi_* = Psi - sin(2b) l12(omega)(R) / (pi a).
PolarField psi_star(const PolarField& psi, const PolarField& omega);

struct VelocityParts {
  PolarField ur_over_r;     // -(2/(pi a)) cos(2b) l12 - d_b Psi_*
  PolarField ubeta_over_r;  // (2/(pi a)) sin(2b) l12 + 2 Psi_* + a D_R Psi
  PolarField u_x;           // origin-aligned strain component; the second
                            // angular derivative is eliminated via the PDE
};

VelocityParts reconstruct_velocity(const PolarField& psi, const PolarField& omega);

// Sup error of the solved field against a separable manufactured solution
// sin(2b) f(log R), on an internal uniform-beta ladder (one entry per nb).
std::vector<double> manufactured_convergence(Alpha alpha,
                                             const std::vector<int>& nb_list,
                                             int nr = 257);

// Solves with the profile vorticity as source and reports
// sup |Psi - (3/2) sin(2b)/(1+R)| / sup |(3/2) sin(2b)/(1+R)|, an O(alpha)
// quantity.
double profile_shape_deviation(Alpha alpha, GridPtr grid);

}  // namespace blowlab

// Linearized dynamics about the approximate steady profile, the steady-state
// residual study, and the rescaling bookkeeping between self-similar time and
// physical time.
#pragma once

#include <vector>

#include "blowlab/grid.hpp"
#include "blowlab/operators.hpp"

namespace blowlab {

struct LinearizedState {
  PolarField omega, eta, xi;
};

struct LinearizedRhs {
  PolarField omega, eta, xi;
  double c_omega = 0.0;  // normalization constant induced by the omega component
};

// Transport-plus-reaction right sides for the three linearized components.
// xi_bar is an optional swirl background; the default treats it as zero, which
// removes the xi coupling terms.
LinearizedRhs linearized_rhs(const LinearizedState& st, const ProfileFields& prof,
                             const PolarField* xi_bar = nullptr);

// Steady-equation residuals of the approximate profile, advected by the
// velocity reconstructed from its own stream function. Sup ratios are taken
// over a window away from the grid edges (R in [1e-3, 1e3], sin(2b) >= 0.05);
// both ratios scale linearly in alpha.
struct ProfileResidual {
  double ratio_omega = 0.0;
  double ratio_eta = 0.0;
  double c_omega_bar = -1.0;
  double c_l_bar = 0.0;
};
ProfileResidual profile_residual(Alpha alpha, GridPtr grid);

// Integrated scale factors from normalization traces sampled uniformly in tau:
// C_omega = C_omega0 exp(int c_omega), C_l = exp(-int c_l),
// C_theta = C_theta0 exp(int (c_l + 2 c_omega)), t_phys = int C_omega dtau.
struct RescalingTrace {
  std::vector<double> tau, C_omega, C_l, C_theta, t_phys;
};
RescalingTrace rescaling_bookkeeping(const std::vector<double>& c_omega_trace,
                                     const std::vector<double>& c_l_trace, double dtau,
                                     double C_omega0 = 1.0, double C_theta0 = 1.0);

}  // namespace blowlab

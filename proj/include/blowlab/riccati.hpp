// Pointwise Riccati model: exact solutions, linearized growth, dynamic
// rescaling with modulation bookkeeping, and blowup-time sensitivity.
#pragma once

#include <functional>
#include <vector>

#include "blowlab/grid.hpp"

namespace blowlab {

// 1-D profile on a symmetric node set, optionally closed-form backed and
// carrying the exact limit at |x| -> infinity (so a sup approached far out
// survives domain truncation).
struct Profile1D {
  std::vector<double> x;  // strictly increasing, symmetric about 0
  std::vector<double> v;
  std::function<double(double)> eval;  // optional
  bool has_far_field = false;
  double far_field = 0.0;

  double value(double xq) const;
  double max_value() const;  // sup, including the far-field limit if present
};

Profile1D profile_from_function(const std::function<double(double)>& f,
                                double L = 40.0, int n = 2001);
Profile1D canonical_u_bar();   // 1/(1+x^2), far field 0
Profile1D reservoir_datum();   // (1+x^4)/(1+x^2)^2, unique max 1 at 0,
                               // sup also approached at infinity (far field 1)

// First blowup time 1/sup(u0); throws if sup(u0) <= 0.
double blowup_time(const Profile1D& u0);

// u(t,x) = u0/(1 - t u0). Requires t < blowup_time(u0).
Profile1D exact_solution(const Profile1D& u0, double t);

// Linearization transported by the exact flow: v(t,x) = v0/(1 - t u0)^2.
Profile1D linearized_solution(const Profile1D& u0, const Profile1D& v0, double t);

// Lp norm (p >= 1 or infinity); closed-form profiles use graded panel
// quadrature so blowup-scale peaks are resolved.
double lp_norm(const Profile1D& f, double p);

// ||v(t)||_p / ||v0||_p.
double growth_factor_lp(const Profile1D& u0, const Profile1D& v0, double p, double t);

// Admissible perturbation test: eps <= 1/8 and |v0(x)| <= eps min(1, |x|^3).
bool perturbation_admissible(const Profile1D& v0, double eps);

struct RescalingState {
  std::vector<double> tau, t_phys, C_omega, C_l, E;
  double recovered_T = 0.0;
  bool basin_warning = false;  // set when E ever exceeds 1/4
};

// Strang-split evolution of the perturbation V around the steady rescaled
// profile 1/(1+x^2), with exact advection/reaction sub-flows and modulation
// traces for constant profile exponents. u0_peak = u0(0) > 0 seeds the
// modulation scale.
RescalingState dynamic_rescaling_evolve(const Profile1D& V0, double u0_peak,
                                        double tau_end, double dtau = 0.005);

// Weighted amplitude sup_x |V(x)| (|x|^-3 + 1), x = 0 excluded.
double perturbation_energy(const Profile1D& V);

// One-sided sensitivity lim_{e->0+} (T(u0) - T(u0 + e v0)) / e, by Richardson
// extrapolation of honest finite differences. Throws when u0 never blows up or
// attains its maximum at two separated points.
double blowup_time_sensitivity(const Profile1D& u0, const Profile1D& v0);

// Pointwise decay rate of the weighted linearization around the profile:
// -1 + 2/(1+x^2) + (1/2) x rho'(x)/rho(x) with rho = |x|^-3 + 1.
double damping_coefficient(double x);

}  // namespace blowlab

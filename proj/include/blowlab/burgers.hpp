// 1-D Burgers shock formation via characteristics, with linearized transport
// and p-norm growth accounting near the first gradient blowup.
#pragma once

#include <functional>
#include <vector>

namespace blowlab {

struct BurgersState {
  std::function<double(double)> u0;   // initial datum
  std::function<double(double)> du0;  // its derivative
  double T_star = 0.0;                // 1 / max(-u0'), inf if no shock
  double u_bound = 0.0;               // sup |u0|, used to bracket characteristics
};

// u0 = -x exp(-x^2); first blowup at T_* = 1 from the origin characteristic.
BurgersState default_burgers();
BurgersState make_burgers(const std::function<double(double)>& u0,
                          const std::function<double(double)>& du0,
                          double L = 10.0);

struct CharPoint {
  double a;   // Lagrangian label with a + t u0(a) = x
  double u;   // u(t,x) = u0(a)
  double ux;  // u_x(t,x) = u0'(a) / (1 + t u0'(a))
};

// Inverts the characteristic map at (t, x); requires t < T_star.
CharPoint solve_characteristics(const BurgersState& st, double t, double x);

// u_x(t, 0) through the solver (not the closed form).
double origin_slope(const BurgersState& st, double t);

// Largest dyadic label radius d = 2^-k such that every label |a| <= d
// satisfies u_x(t, X(t,a)) <= (1/2) u_x(t,0) at 64 time samples in [0, T].
double trapping_radius(const BurgersState& st, double T);

struct LinearizedBurgers {
  std::vector<double> a;   // labels
  std::vector<double> xt;  // X(t, a)
  std::vector<double> vt;  // v(t, X(t,a)) = v0(a) / (1 + t u0'(a))
  bool support_escaped = false;
};

// Transport of a linearized disturbance attached to the characteristics.
// If trap_delta > 0, flags supports that leave [-trap_delta, trap_delta].
LinearizedBurgers linearized_evolve(const BurgersState& st,
                                    const std::function<double(double)>& v0,
                                    double a_lo, double a_hi, double t,
                                    int n = 4097, double trap_delta = 0.0);

// ||v(t)||_p / ||v0||_p by the Lagrangian change of variables (exact measure
// factor (1 + t u0')^{1-p}); p >= 1 or infinity.
double growth_factor_lp(const BurgersState& st,
                        const std::function<double(double)>& v0,
                        double a_lo, double a_hi, double t, double p);

// ||v(t)||_1 computed in Eulerian variables: per-node characteristic
// inversion and quadrature over the transported support.
double eulerian_l1(const BurgersState& st, const std::function<double(double)>& v0,
                   double a_lo, double a_hi, double t);

// exp( (1 - 1/p)/2 * int_0^T -u_x(t,0) dt ), the integral taken by quadrature
// of the solver-measured origin slope (log-clustered nodes).
double growth_bound_lp(const BurgersState& st, double T, double p);

// Smooth plateau bump: 1 on |y| <= 1/2, 0 at |y| >= 1, C^infinity.
double plateau_bump(double y);

}  // namespace blowlab

// Transport of phase and amplitude vectors along particle paths, invariant
// tracking, and amplification estimators.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "blowlab/fields3d.hpp"

namespace blowlab {

struct TrajectoryBundle {
  std::vector<double> t;
  std::vector<Vec3> gamma, xi, b, b_tilde;
  std::vector<double> c_trace;  // stretching coefficient for b
};

// RK4 on gamma' = u, xi' = -(grad u)^T xi, b' = -(grad u) b + c xi with
// c = 2 xi.(grad u b)/|xi|^2 (and its own c for the companion b_tilde).
// Throws if |xi| collapses below 1e-10 of its initial size or a state goes
// non-finite.
TrajectoryBundle integrate_euler(const AnalyticVelocityField& f, const Vec3& x0,
                                 const Vec3& xi0, const Vec3& b0,
                                 const Vec3& b_tilde0, double t_end, double dt);

// Variant with the buoyancy coupling L b = (0, 0, b_x) and its xi-orthogonal
// projection correction.
TrajectoryBundle integrate_boussinesq(const AnalyticVelocityField& f,
                                      const Vec3& x0, const Vec3& xi0,
                                      const Vec3& b0, double t_end, double dt);

struct ConservationReport {
  double drift_b_xi = 0.0;      // b . xi
  double drift_omega_xi = 0.0;  // omega(gamma) . xi (needs a curl and a
                                // steady-Euler field to be meaningful)
  double drift_bb_xi = 0.0;     // (b x b_tilde) . xi
  bool omega_checked = false;
};

// Relative drift of each transported invariant over the bundle.
ConservationReport conservation_report(const AnalyticVelocityField& f,
                                       const TrajectoryBundle& tb);

enum class GrowthFlavor {
  amplitude,         // sup |b(t)|
  weighted_radius,   // sup (r_t/r_0)^{-sigma} |b(t)|, sigma = 99/100
  buoyancy,          // sup |b(t)| under the buoyancy-coupled transport
};

struct GrowthEstimate {
  double beta_hat = 0.0;           // running max at t_end
  std::vector<double> t;
  std::vector<double> beta_trace;  // running max over samples and time
};

// Monte-Carlo + coordinate-ascent estimator over initial points in the field's
// sample ball, unit xi0 (poloidal for axisymmetric fields) and unit b0 with
// b0 . xi0 = 0.
GrowthEstimate beta_estimator(const AnalyticVelocityField& f, double t_end,
                              double dt, GrowthFlavor flavor, int n_samples = 4096,
                              std::uint64_t seed = 1234);

struct ExpansionReport {
  double sup_ratio = 0.0;   // max over released radii of r_T / r_0
  double axis_factor = 0.0; // exp of the integrated axial stretching rate
  bool within_strip = true; // every sample stayed where u_r/r is comparable
                            // (factor in [1/2, 2]) to its on-axis value
};

// Radial spreading of near-axis trajectories of an axisymmetric field,
// compared against the linearized on-axis prediction.
ExpansionReport expansion_rate(const AxisymField& f, double z0, double t_end,
                               double dt);

// Max round-trip error of forward-then-backward particle transport over n
// sample points.
double flow_map_invertibility(const AnalyticVelocityField& f, double t_end,
                              double dt, int n = 128, std::uint64_t seed = 99);

struct AxisymBundle {
  std::vector<double> t;
  std::vector<std::array<double, 2>> rz, xi;  // poloidal position and phase
  std::vector<Vec3> b;                        // (b^r, b^theta, b^z)
  double S0 = 0.0;                            // transported scalar label
};

// Poloidal reduction: 5 transported components plus the particle path.
AxisymBundle integrate_axisym(const AxisymField& f, double r0, double z0,
                              const std::array<double, 2>& xi0, const Vec3& b0,
                              double S0, double t_end, double dt);

}  // namespace blowlab

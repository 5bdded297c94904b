// Oscillatory wave packets transported by a background flow: marker clouds,
// pointwise phase/amplitude state, assembled wave fields, and residual checks.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "blowlab/bichar.hpp"
#include "blowlab/fields3d.hpp"

namespace blowlab {

// Problem setup: background flow plus initial phase and amplitude data.
struct WKBData {
  AnalyticVelocityField flow;
  std::function<double(const Vec3&)> S0;     // phase label
  std::function<Vec3(const Vec3&)> gradS0;   // its exact gradient
  std::function<Vec3(const Vec3&)> b0;       // amplitude, orthogonal to gradS0
  std::function<double(const Vec3&)> phi0;   // compactly supported envelope
  Vec3 support_center{0, 0, 0};
  double support_radius = 0.2;
  double ode_dt = 2e-3;  // internal transport step
};

// Canonical setup on the interior vortex: S0 = z, b0 = e_x, bump envelope.
WKBData hill_wkb_data();

// Transported pointwise state at (t, x), found by tracing the particle path
// back to t = 0 and re-integrating the transport system forward.
struct WKBState {
  Vec3 xi, b;
  double S = 0.0, phi = 0.0, c = 0.0;  // c: stretching coefficient at (t,x)
};
WKBState evaluate_state(const WKBData& d, double t, const Vec3& x);

struct LagrangianMarkerCloud {
  double t = 0.0;
  std::vector<Vec3> x0, xt, xi, b;
  std::vector<double> S, phi;
  double L_gamma = 1.0;  // amplification proxy for the flow's Lipschitz growth
};

// Seeds markers in the envelope support and transports them to time t.
LagrangianMarkerCloud build_fields(const WKBData& d, double t,
                                   int n_markers = 256, std::uint64_t seed = 7);

// Corridor half-width delta2 = delta / (4 (L_gamma + 1)^3).
double corridor_width(double delta, double L_gamma);

// Complex wave sample at one point: leading order i phi b e^{iS/eps}, the
// first-order corrector, and the pressure-like multiplier -eps c phi e^{iS/eps}.
struct WaveSample {
  Vec3 v_re{0, 0, 0}, v_im{0, 0, 0};
  Vec3 vfull_re{0, 0, 0}, vfull_im{0, 0, 0};
  double Q_re = 0.0, Q_im = 0.0;
};
WaveSample wave_at(const WKBData& d, double eps, double t, const Vec3& x,
                   double fd_h = 1e-4);

struct WKBSolution {
  double eps = 0.0, delta = 0.0, delta2 = 0.0, L_gamma = 1.0, t = 0.0;
  std::vector<Vec3> points;
  std::vector<WaveSample> wave;
};

// Assembles the wave at the cloud's marker positions.
WKBSolution assemble(const WKBData& d, const LagrangianMarkerCloud& cloud,
                     double eps, double delta = 0.1);

struct ResidualCheck {
  std::vector<double> eps, rnorm;  // RMS transport residual per eps
  double slope = 0.0;              // of log rnorm against log eps
  double pointwise_h = 0.0;        // max identity mismatch at step h
  double pointwise_2h = 0.0;       // and at 2h (expect ~4x larger)
};

// Differentiates the assembled wave numerically and compares the transport
// residual d_t v + u.grad v + (grad u) v + grad Q against eps grad(c phi)
// rotated by the phase. The residual norm should scale linearly in eps.
ResidualCheck residual_identity_check(const WKBData& d, double t,
                                      const std::vector<double>& eps_list,
                                      int n_pts = 160, std::uint64_t seed = 5);

// Numerical divergence of the assembled wave at a point (with or without the
// corrector term; the corrected field is divergence-free).
double divergence_residual(const WKBData& d, double eps, double t, const Vec3& x,
                           double h, bool with_corrector);

struct AxisymCompare {
  double max_state_diff = 0.0;     // 3-D route vs poloidal route
  double max_orth = 0.0;           // sup |xi . b|
  double max_grad_mismatch = 0.0;  // sup |grad S - xi| (finite differences)
};

// Cross-checks the 3-D transported state against the poloidal reduction of an
// axisymmetric flow on the y = 0 plane.
AxisymCompare axisymmetric_extension(const WKBData& d, const AxisymField& ax,
                                     double t, int n_pts = 24);

// Eulerian p-norm of the transported envelope at time t over a bounding box
// (n Gauss nodes per axis). The exact value is the initial norm.
double envelope_norm(const WKBData& d, double t, double p, int n = 20);
double envelope_norm0(const WKBData& d, double p, int n = 48);

}  // namespace blowlab

// High-frequency wave packets riding a steady flow: transported phase and
// amplitude, oscillatory wave assembly, residual scaling, and the
// divergence-cleaning corrector.
#include <algorithm>
#include <cmath>

#include "blowlab/bichar.hpp"
#include "blowlab/fields3d.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/wkb.hpp"
#include "support/harness.hpp"

using namespace blowlab;
using harness::close;
using harness::num;
using harness::pair;
using harness::record;
using harness::rel_close;
using harness::throws;

static void test_initial_state() {
  auto d = hill_wkb_data();
  Vec3 x{0.33, 0.01, 0.24};
  WKBState st = evaluate_state(d, 0.0, x);
  record("initial phase gradient", close(st.xi[0], 0.0, 1e-15) &&
                                       close(st.xi[1], 0.0, 1e-15) &&
                                       close(st.xi[2], 1.0, 1e-15));
  record("initial amplitude direction", close(st.b[0], 1.0, 1e-15) &&
                                            close(st.b[2], 0.0, 1e-15));
  record("initial phase value", close(st.S, x[2], 1e-15));
  record("initial envelope sample", close(st.phi, d.phi0(x), 1e-15));
  record("initial pressure coefficient", rel_close(st.c, -1.6 * x[0], 1e-12),
         pair(st.c, -1.6 * x[0]));

  double eps = 0.02;
  WaveSample w = wave_at(d, eps, 0.0, x);
  double th = st.S / eps;
  record("leading wave real part",
         close(w.v_re[0], -st.phi * std::sin(th), 1e-12) &&
             close(w.v_re[2], 0.0, 1e-12));
  record("leading wave imaginary part", close(w.v_im[0], st.phi * std::cos(th), 1e-12));
  record("pressure sample tracks the coefficient",
         close(w.Q_re, -eps * st.c * st.phi * std::cos(th), 1e-12) &&
             close(w.Q_im, -eps * st.c * st.phi * std::sin(th), 1e-12));
  record("nonpositive frequency parameter is refused",
         throws([&] { wave_at(d, 0.0, 0.0, x); }));
}

static void test_transport_and_orthogonality() {
  auto d = hill_wkb_data();
  auto cloud = build_fields(d, 0.4, 32, 9);
  record("cloud carries one sample per marker",
         cloud.xt.size() == 32 && cloud.b.size() == 32 && cloud.S.size() == 32);
  record("stretching budget is at least one", cloud.L_gamma >= 1.0,
         num(cloud.L_gamma));

  double worst = 0.0;
  for (const Vec3& x : cloud.xt) {
    WKBState st = evaluate_state(d, 0.4, x);
    worst = std::max(worst, std::fabs(dot3(st.b, st.xi)));
  }
  record("amplitude stays orthogonal to the phase gradient", worst < 1e-9,
         num(worst));

  WKBData bad = d;
  bad.b0 = [](const Vec3&) { return Vec3{0, 0, 1}; };
  record("non-orthogonal seeding is refused",
         throws([&] { build_fields(bad, 0.1, 8, 3); }));

  double wq = corridor_width(0.1, cloud.L_gamma);
  double q = cloud.L_gamma + 1.0;
  record("corridor width arithmetic", rel_close(wq, 0.1 / (4.0 * q * q * q), 1e-15));

  auto sol = assemble(d, cloud, 0.05, 0.1);
  record("assembly keeps the marker count", sol.points.size() == cloud.xt.size() &&
                                                sol.wave.size() == cloud.xt.size());
  record("assembly records the corridor",
         close(sol.delta2, corridor_width(0.1, cloud.L_gamma), 1e-15));
  WaveSample again = wave_at(d, 0.05, 0.4, cloud.xt[5]);
  record("assembled wave matches a direct sample",
         close(sol.wave[5].v_re[0], again.v_re[0], 1e-12) &&
             close(sol.wave[5].Q_im, again.Q_im, 1e-12));
}

static void test_axisymmetric_consistency() {
  auto d = hill_wkb_data();
  auto cmp = axisymmetric_extension(d, hill_axisym(), 0.35, 16);
  record("meridional reduction reproduces the 3d state", cmp.max_state_diff < 1e-6,
         num(cmp.max_state_diff));
  record("reduction keeps orthogonality", cmp.max_orth < 1e-8, num(cmp.max_orth));
  record("phase gradient matches the differentiated phase",
         cmp.max_grad_mismatch < 1e-4, num(cmp.max_grad_mismatch));
}

static void test_envelope_norms() {
  auto d = hill_wkb_data();
  double n0 = envelope_norm0(d, 2.0);
  record("envelope starts at unit mass", close(n0, 1.0, 2e-2), num(n0));
  double nt = envelope_norm(d, 0.4, 2.0, 20);
  record("volume-preserving transport conserves the mass",
         rel_close(nt, n0, 3e-2), pair(nt, n0));
}

static void test_divergence_corrector() {
  auto d = hill_wkb_data();
  double eps = 0.01;

  // shoulder of the envelope, where the leading-order divergence is active
  Vec3 xs{0.38, 0.02, 0.2};
  double raw0 = divergence_residual(d, eps, 0.0, xs, 1e-5, false);
  double fix0 = divergence_residual(d, eps, 0.0, xs, 1e-5, true);
  record("shoulder point sees a leading-order divergence", raw0 > 1.0, num(raw0));
  record("corrector removes the leading divergence", fix0 < 0.05 * raw0,
         pair(fix0, raw0));

  auto cloud = build_fields(d, 0.25, 64, 11);
  double raw = 0.0;
  Vec3 xbest = cloud.xt[0];
  for (int s = 0; s < 64; s += 8) {
    double r = divergence_residual(d, eps, 0.25, cloud.xt[s], 1e-5, false);
    if (r > raw) {
      raw = r;
      xbest = cloud.xt[s];
    }
  }
  double fix = divergence_residual(d, eps, 0.25, xbest, 1e-5, true);
  record("transported packet still sees the raw divergence", raw > 1.0, num(raw));
  record("corrector keeps working under transport", fix < 0.05 * raw,
         pair(fix, raw));
}

static void test_residual_scaling() {
  auto d = hill_wkb_data();
  auto rc = residual_identity_check(d, 0.3, {5e-2, 2e-2}, 12, 5);
  record("residual norm shrinks with the frequency parameter",
         rc.rnorm[1] < rc.rnorm[0], pair(rc.rnorm[1], rc.rnorm[0]));
  record("residual norm scales linearly", rc.slope > 0.7 && rc.slope < 1.3,
         num(rc.slope));
  double ratio = rc.pointwise_2h / std::max(rc.pointwise_h, 1e-300);
  record("identity gap converges at second order", ratio > 2.5 && ratio < 6.0,
         num(ratio));
  record("single frequency sample is refused",
         throws([&] { residual_identity_check(d, 0.3, {1e-2}, 4, 5); }));
}

int main() {
  test_initial_state();
  test_transport_and_orthogonality();
  test_axisymmetric_consistency();
  test_envelope_norms();
  test_divergence_corrector();
  test_residual_scaling();
  return harness::summary("test_wkb");
}

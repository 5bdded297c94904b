#include "blowlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "blowlab/bichar.hpp"
#include "blowlab/burgers.hpp"
#include "blowlab/elliptic.hpp"
#include "blowlab/fields3d.hpp"
#include "blowlab/linearized.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/operators.hpp"
#include "blowlab/riccati.hpp"
#include "blowlab/wkb.hpp"

namespace blowlab {

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c];
  out << "\n";
  char buf[40];
  for (const auto& r : rows) {
    if (r.size() != columns.size())
      throw std::runtime_error("write_csv: row width mismatch in " + path);
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", r[c]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

namespace {

void maybe_csv(const std::string& outdir, const std::string& name,
               const std::vector<std::string>& cols,
               const std::vector<std::vector<double>>& rows) {
  if (outdir.empty()) return;
  std::filesystem::create_directories(outdir);
  write_csv(outdir + "/" + name + ".csv", cols, rows);
}

Profile1D cubic_tail_perturbation() {
  return profile_from_function(
      [](double x) { return 1.0 / ((1.0 + x * x) * (1.0 + x * x)); });
}

nlohmann::json run_riccati_slopes(const Config& cfg, std::uint64_t, const std::string& outdir) {
  auto u0 = canonical_u_bar();
  auto v0 = cubic_tail_perturbation();
  const int k_lo = static_cast<int>(cfg.integer("riccati.k_lo", 6));
  const int k_hi = static_cast<int>(cfg.integer("riccati.k_hi", 13));
  std::vector<double> lg1mt, g1, g2, gi;
  std::vector<std::vector<double>> rows;
  for (int k = k_lo; k <= k_hi; ++k) {
    double t = 1.0 - std::pow(2.0, -k);
    lg1mt.push_back(std::log(1.0 - t));
    g1.push_back(std::log(growth_factor_lp(u0, v0, 1.0, t)));
    g2.push_back(std::log(growth_factor_lp(u0, v0, 2.0, t)));
    gi.push_back(std::log(
        growth_factor_lp(u0, v0, std::numeric_limits<double>::infinity(), t)));
    rows.push_back({t, g1.back(), g2.back(), gi.back()});
  }
  maybe_csv(outdir, "riccati_slopes", {"t", "log_g1", "log_g2", "log_ginf"}, rows);
  nlohmann::json j;
  j["slope_p1"] = fit_slope(lg1mt, g1);
  j["slope_p2"] = fit_slope(lg1mt, g2);
  j["slope_inf"] = fit_slope(lg1mt, gi);
  j["target_p1"] = -1.5;
  j["target_p2"] = -1.75;
  j["target_inf"] = -2.0;
  return j;
}

nlohmann::json run_riccati_rescaling(const Config& cfg, std::uint64_t,
                                     const std::string& outdir) {
  auto V0 = profile_from_function([](double x) {
    double w = 1.0 + x * x;
    return 0.05 * x * x * x / (w * w * w);
  });
  const double tau_end = cfg.num("riccati.tau_end", 10.0);
  auto st = dynamic_rescaling_evolve(V0, 2.0, tau_end);
  double worst = 0.0;
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < st.tau.size(); ++k) {
    worst = std::max(worst, st.E[k] / (st.E.front() * std::exp(-st.tau[k] / 4.0)));
    rows.push_back({st.tau[k], st.E[k], st.C_omega[k], st.C_l[k], st.t_phys[k]});
  }
  maybe_csv(outdir, "riccati_rescaling", {"tau", "E", "C_omega", "C_l", "t_phys"}, rows);
  nlohmann::json j;
  j["E0"] = st.E.front();
  j["E_end"] = st.E.back();
  j["max_E_over_quarter_decay"] = worst;
  j["recovered_T"] = st.recovered_T;
  j["recovered_T_error"] = std::abs(st.recovered_T - 0.5);
  j["basin_warning"] = st.basin_warning;
  return j;
}

nlohmann::json run_burgers_slope(const Config&, std::uint64_t, const std::string& outdir) {
  auto st = default_burgers();
  nlohmann::json j;
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (double f : {0.5, 0.9, 0.99}) {
    double t = f * st.T_star;
    double got = origin_slope(st, t);
    double want = -1.0 / (st.T_star - t);
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
    rows.push_back({t, got, want});
  }
  maybe_csv(outdir, "burgers_origin_slope", {"t", "measured", "exact"}, rows);
  j["max_rel_error"] = worst;
  j["T_star"] = st.T_star;
  return j;
}

nlohmann::json run_burgers_amplification(const Config& cfg, std::uint64_t,
                                         const std::string& outdir) {
  auto st = default_burgers();
  nlohmann::json j;
  std::vector<std::vector<double>> rows;
  nlohmann::json cases = nlohmann::json::array();
  for (double T : {0.9, 0.99}) {
    double delta = trapping_radius(st, T);
    for (double p : {2.0, 4.0}) {
      auto v0 = [delta](double a) { return plateau_bump(a / delta); };
      double g = growth_factor_lp(st, v0, -delta, delta, T, p);
      double bound = std::pow(st.T_star - T, -(1.0 - 1.0 / p) / 2.0);
      nlohmann::json c;
      c["T"] = T;
      c["p"] = p;
      c["delta"] = delta;
      c["growth"] = g;
      c["criterion_bound"] = bound;
      c["meets_bound"] = g >= bound;
      cases.push_back(c);
      rows.push_back({T, p, delta, g, bound});
    }
  }
  // Slope of the integrated-amplification functional against 1 - T.
  std::vector<double> lx, ly;
  const double p_ref = cfg.num("burgers.p_ref", 2.0);
  for (double T : {0.9, 0.99, 0.999}) {
    lx.push_back(std::log(1.0 - T));
    ly.push_back(std::log(growth_bound_lp(st, T, p_ref)));
  }
  maybe_csv(outdir, "burgers_amplification", {"T", "p", "delta", "growth", "bound"}, rows);
  j["cases"] = cases;
  j["bound_slope_p2"] = fit_slope(lx, ly);
  j["bound_slope_target"] = -(1.0 - 1.0 / p_ref) / 2.0;
  return j;
}

nlohmann::json run_bichar_invariants(const Config& cfg, std::uint64_t seed,
                                     const std::string& outdir) {
  const double dt = cfg.num("bichar.dt", 1e-3);
  const double t_end = cfg.num("bichar.t_end", 1.0);
  Rng rng(seed ? seed : 17);
  nlohmann::json j = nlohmann::json::array();
  std::vector<std::vector<double>> rows;
  int field_id = 0;
  for (const char* name : {"abc", "strain", "rotation", "hill"}) {
    auto f = field_by_name(name);
    Vec3 x0{}, xi0{}, b0{}, bt0{};
    for (int k = 0; k < 3; ++k) {
      x0[k] = 0.3 * f.sample_radius * rng.uniform(-1.0, 1.0);
      xi0[k] = rng.uniform(-1.0, 1.0);
      b0[k] = rng.uniform(-1.0, 1.0);
      bt0[k] = rng.uniform(-1.0, 1.0);
    }
    // cross pairing is invariant on the polarization class b.xi = bt.xi = 0
    auto pol = [&](Vec3 v) {
      double c = dot3(v, xi0) / dot3(xi0, xi0);
      for (int k = 0; k < 3; ++k) v[k] -= c * xi0[k];
      return v;
    };
    auto tb = conservation_report(f, integrate_euler(f, x0, xi0, b0, bt0, t_end, dt));
    auto tb2 =
        conservation_report(f, integrate_euler(f, x0, xi0, b0, bt0, t_end, dt / 2.0));
    auto tbp = conservation_report(
        f, integrate_euler(f, x0, xi0, pol(b0), pol(bt0), t_end, dt));
    nlohmann::json e;
    e["field"] = name;
    e["drift_b_xi"] = tb.drift_b_xi;
    e["drift_omega_xi"] = tb.drift_omega_xi;
    e["drift_bb_xi"] = tbp.drift_bb_xi;
    e["omega_checked"] = tb.omega_checked;
    e["drift_b_xi_half_dt"] = tb2.drift_b_xi;
    j.push_back(e);
    rows.push_back({static_cast<double>(field_id++), tb.drift_b_xi, tb.drift_omega_xi,
                    tbp.drift_bb_xi, tb2.drift_b_xi});
  }
  maybe_csv(outdir, "bichar_invariants",
            {"field_id", "drift_b_xi", "drift_omega_xi", "drift_bb_xi", "half_dt"}, rows);
  nlohmann::json out;
  out["fields"] = j;
  return out;
}

nlohmann::json run_bichar_beta(const Config& cfg, std::uint64_t seed,
                               const std::string& outdir) {
  const int n = static_cast<int>(cfg.integer("bichar.samples", 256));
  const double t_end = cfg.num("bichar.t_end", 2.0);
  auto g = beta_estimator(hill_field(), t_end, 2e-3, GrowthFlavor::amplitude, n,
                          seed ? seed : 1234);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < g.t.size(); ++k) rows.push_back({g.t[k], g.beta_trace[k]});
  maybe_csv(outdir, "bichar_beta", {"t", "beta_running_max"}, rows);
  nlohmann::json j;
  j["beta_hat"] = g.beta_hat;
  // Steady field: sup |omega(t)| equals sup |omega(0)|, so the amplification
  // bound by beta_hat^2 holds whenever beta_hat >= 1.
  j["sup_bound_ok"] = g.beta_hat >= 1.0;
  return j;
}

nlohmann::json run_wkb_residual(const Config& cfg, std::uint64_t seed,
                                const std::string& outdir) {
  auto d = hill_wkb_data();
  std::vector<double> eps = {1e-1, 3e-2, 1e-2};
  const int n_pts = static_cast<int>(cfg.integer("wkb.points", 40));
  auto rc = residual_identity_check(d, cfg.num("wkb.t", 0.5), eps, n_pts, seed ? seed : 5);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < rc.eps.size(); ++k) rows.push_back({rc.eps[k], rc.rnorm[k]});
  maybe_csv(outdir, "wkb_residual", {"eps", "residual_rms"}, rows);
  nlohmann::json j;
  j["slope"] = rc.slope;
  j["pointwise_h"] = rc.pointwise_h;
  j["pointwise_2h"] = rc.pointwise_2h;
  j["pointwise_ratio"] = rc.pointwise_2h / rc.pointwise_h;
  return j;
}

nlohmann::json run_profile_tail(const Config& cfg, std::uint64_t, const std::string& outdir) {
  const double a = cfg.num("profile.alpha", 0.1);
  auto grid = PolarGrid::make(Alpha(a), 1e-6, 1e6,
                              static_cast<int>(cfg.integer("grid.nr", 256)),
                              static_cast<int>(cfg.integer("grid.nb", 96)));
  auto pf = profile_fields(Alpha(a), grid);

  auto tail = l12_all_nodes(pf.omega_bar);
  PolarField eval_only = pf.omega_bar;  // strip the separable shortcut
  eval_only.separable = false;
  eval_only.radial_tail = nullptr;
  auto tail2 = l12_all_nodes(eval_only);

  double worst = 0.0, worst2 = 0.0;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < grid->nr(); ++i) {
    double want = 1.5 * kPi * a / (1.0 + grid->R[static_cast<std::size_t>(i)]);
    worst = std::max(worst, std::abs(tail[static_cast<std::size_t>(i)] - want) / want);
    worst2 = std::max(worst2, std::abs(tail2[static_cast<std::size_t>(i)] - want) / want);
    rows.push_back({grid->R[static_cast<std::size_t>(i)], tail[static_cast<std::size_t>(i)],
                    tail2[static_cast<std::size_t>(i)], want});
  }
  maybe_csv(outdir, "profile_tail", {"R", "closed_route", "quadrature_route", "exact"}, rows);
  nlohmann::json j;
  j["alpha"] = a;
  j["max_rel_error_closed"] = worst;
  j["max_rel_error_quadrature"] = worst2;
  j["c"] = pf.c;
  return j;
}

nlohmann::json run_profile_residual(const Config& cfg, std::uint64_t,
                                    const std::string& outdir) {
  const int nr = static_cast<int>(cfg.integer("grid.nr", 320));
  const int nb = static_cast<int>(cfg.integer("grid.nb", 96));
  nlohmann::json j = nlohmann::json::array();
  std::vector<std::vector<double>> rows;
  double prev_om = 0.0;
  for (double a : {0.1, 0.05}) {
    auto grid = PolarGrid::make(Alpha(a), 1e-6, 1e6, nr, nb);
    auto pr = profile_residual(Alpha(a), grid);
    nlohmann::json e;
    e["alpha"] = a;
    e["ratio_omega"] = pr.ratio_omega;
    e["ratio_eta"] = pr.ratio_eta;
    j.push_back(e);
    rows.push_back({a, pr.ratio_omega, pr.ratio_eta});
    if (prev_om > 0.0) {
      nlohmann::json h;
      h["halving_omega"] = pr.ratio_omega / prev_om;
      j.push_back(h);
    }
    prev_om = pr.ratio_omega;
  }
  maybe_csv(outdir, "profile_residual", {"alpha", "ratio_omega", "ratio_eta"}, rows);
  nlohmann::json out;
  out["levels"] = j;
  return out;
}

nlohmann::json run_elliptic_ladder(const Config& cfg, std::uint64_t,
                                   const std::string& outdir) {
  const double a = cfg.num("elliptic.alpha", 0.1);
  std::vector<int> nbs = {16, 32, 64};
  auto errs = manufactured_convergence(Alpha(a), nbs,
                                       static_cast<int>(cfg.integer("elliptic.nr", 129)));
  std::vector<double> lx, ly;
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < nbs.size(); ++k) {
    lx.push_back(std::log(1.0 / nbs[k]));
    ly.push_back(std::log(errs[k]));
    rows.push_back({static_cast<double>(nbs[k]), errs[k]});
  }
  maybe_csv(outdir, "elliptic_ladder", {"nb", "sup_error"}, rows);

  auto grid = PolarGrid::make(Alpha(a), 1e-6, 1e6, 192, 64);
  double dev = profile_shape_deviation(Alpha(a), grid);
  nlohmann::json j;
  j["ladder_slope"] = fit_slope(lx, ly);
  j["profile_shape_deviation"] = dev;
  j["deviation_over_alpha"] = dev / a;
  return j;
}

nlohmann::json run_origin_gradient(const Config& cfg, std::uint64_t,
                                   const std::string& outdir) {
  const double a = cfg.num("origin.alpha", 0.1);
  auto grid = PolarGrid::make(Alpha(a), 0.5, 1e3,
                              static_cast<int>(cfg.integer("grid.nr", 400)),
                              static_cast<int>(cfg.integer("grid.nb", 96)));
  // Polynomial bump in (log rho, beta), z-odd by construction of the operator;
  // support rho in [1, 40], beta in [0.3, 1.2].
  auto bump = [](double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double q = 1.0 - s * s;
    return q * q * q * q;
  };
  const double lr_mid = 0.5 * std::log(40.0), lr_half = 0.5 * std::log(40.0);
  PolarField f = make_field(grid, [&](double R, double beta) {
    double lrho = std::log(R) / a;
    return bump((lrho - lr_mid) / lr_half) * bump((beta - 0.75) / 0.45);
  });
  double uzz = uzz_origin(f);
  double urr = urr_origin(f);
  maybe_csv(outdir, "origin_gradient", {"uzz", "urr"}, {{uzz, urr}});
  nlohmann::json j;
  j["uzz"] = uzz;
  j["urr"] = urr;
  j["trace_ratio"] = urr / uzz;  // expect -1/2 for the axisymmetric no-swirl case
  j["trace_ratio_error"] = std::abs(urr / uzz + 0.5);
  return j;
}

}  // namespace

const std::vector<Experiment>& experiment_catalog() {
  static const std::vector<Experiment> cat = {
      {"riccati-slopes", "AC-1",
       "Linearized growth exponents of the pointwise model in L1/L2/Linf", run_riccati_slopes},
      {"riccati-rescaling", "AC-2",
       "Rescaled perturbation decay and blowup-time recovery", run_riccati_rescaling},
      {"burgers-origin-slope", "AC-3",
       "Origin slope of the shock solution against the closed form", run_burgers_slope},
      {"burgers-amplification", "AC-4",
       "Lp amplification of trapped disturbances near shock time", run_burgers_amplification},
      {"bichar-invariants", "AC-5",
       "Transported invariants of the phase/amplitude system", run_bichar_invariants},
      {"bichar-beta", "AC-6", "Monte-Carlo amplification estimator on the interior vortex",
       run_bichar_beta},
      {"wkb-residual", "AC-7", "Transport residual of the oscillatory wave ansatz",
       run_wkb_residual},
      {"profile-tail", "AC-8", "Tail integral of the steady profile against its closed form",
       run_profile_tail},
      {"profile-residual", "AC-9", "Steady-equation residual scaling in alpha",
       run_profile_residual},
      {"elliptic-ladder", "AC-10",
       "Manufactured-solution convergence and profile shape deviation", run_elliptic_ladder},
      {"origin-gradient", "AC-11", "Origin velocity gradients from the angular-moment operator",
       run_origin_gradient},
  };
  return cat;
}

const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : experiment_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

nlohmann::json run_experiment(const std::string& name, const Config& cfg,
                              std::uint64_t seed, const std::string& outdir) {
  const Experiment* e = find_experiment(name);
  if (!e) throw std::runtime_error("unknown experiment: " + name);
  nlohmann::json out;
  out["experiment"] = e->name;
  out["anchor"] = e->anchor;
  out["summary"] = e->summary;
  out["seed"] = seed;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cfg.hash()));
  out["config_hash"] = buf;
  out["data"] = e->run(cfg, seed, outdir);
  return out;
}

}  // namespace blowlab

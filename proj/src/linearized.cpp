#include "blowlab/linearized.hpp"

#include <cmath>
#include <stdexcept>

#include "blowlab/elliptic.hpp"
#include "blowlab/numerics.hpp"

namespace blowlab {

LinearizedRhs linearized_rhs(const LinearizedState& st, const ProfileFields& prof,
                             const PolarField* xi_bar) {
  if (!st.omega.grid || st.omega.grid != st.eta.grid || st.omega.grid != st.xi.grid)
    throw std::invalid_argument("linearized_rhs: components must share one grid");
  if (st.omega.grid != prof.omega_bar.grid)
    throw std::invalid_argument("linearized_rhs: state and profile grids differ");

  const auto& g = *st.omega.grid;
  const double a = g.alpha.value;
  const double c_om = normalization(st.omega, g.alpha).c_omega;

  PolarField dr_om = diff_DR(st.omega, 1), db_om = diff_Dbeta(st.omega, 1);
  PolarField dr_et = diff_DR(st.eta, 1), db_et = diff_Dbeta(st.eta, 1);
  PolarField dr_xi = diff_DR(st.xi, 1), db_xi = diff_Dbeta(st.xi, 1);
  PolarField dr_omb = diff_DR(prof.omega_bar, 1);
  PolarField dr_etb = diff_DR(prof.eta_bar, 1);
  PolarField dr_xib, xib;
  if (xi_bar) {
    xib = *xi_bar;
    dr_xib = diff_DR(xib, 1);
  }

  // ltilde(R) = l12(omega)(R) - l12(omega)(0), per radial node.
  auto lt = l12_all_nodes(st.omega);
  const double l0 = l12(st.omega, 0.0);
  for (auto& v : lt) v -= l0;

  LinearizedRhs out;
  out.c_omega = c_om;
  out.omega = PolarField(st.omega.grid);
  out.eta = PolarField(st.omega.grid);
  out.xi = PolarField(st.omega.grid);

  for (int i = 0; i < g.nr(); ++i) {
    const double q = 3.0 / (1.0 + g.R[static_cast<std::size_t>(i)]);
    const double ltr = (2.0 / (kPi * a)) * lt[static_cast<std::size_t>(i)];
    for (int j = 0; j < g.nb(); ++j) {
      out.omega.at(i, j) = -dr_om.at(i, j) - q * db_om.at(i, j) - st.omega.at(i, j) +
                           st.eta.at(i, j) +
                           c_om * (prof.omega_bar.at(i, j) - dr_omb.at(i, j));

      double rhs_eta = -dr_et.at(i, j) - q * db_et.at(i, j) +
                       (-2.0 + q) * st.eta.at(i, j) + ltr * prof.eta_bar.at(i, j) +
                       c_om * (prof.eta_bar.at(i, j) - dr_etb.at(i, j));
      double rhs_xi = -dr_xi.at(i, j) - q * db_xi.at(i, j) + (-2.0 - q) * st.xi.at(i, j);
      if (xi_bar)
        rhs_xi += -ltr * xib.at(i, j) + c_om * (3.0 * xib.at(i, j) - dr_xib.at(i, j));
      out.eta.at(i, j) = rhs_eta;
      out.xi.at(i, j) = rhs_xi;
    }
  }
  return out;
}

ProfileResidual profile_residual(Alpha alpha, GridPtr grid) {
  const auto& g = *grid;
  const double a = alpha.value;
  auto prof = profile_fields(alpha, grid);

  EllipticProblem prob;
  prob.grid = grid;
  prob.source = prof.omega_bar;
  PolarField psi = solve_elliptic(prob);
  VelocityParts vel = reconstruct_velocity(psi, prof.omega_bar);

  PolarField dr_om = diff_DR(prof.omega_bar, 1);
  PolarField db_om = diff_Dbeta(prof.omega_bar, 1);  // exact hooks
  PolarField dr_et = diff_DR(prof.eta_bar, 1);
  PolarField db_et = diff_Dbeta(prof.eta_bar, 1);

  const double acl = a * prof.c_l_bar;  // 1 + 3a
  double sup_rom = 0.0, sup_ret = 0.0, sup_om = 0.0, sup_et = 0.0;
  for (int i = 0; i < g.nr(); ++i) {
    const double R = g.R[static_cast<std::size_t>(i)];
    if (R < 1e-3 || R > 1e3) continue;
    for (int j = 0; j < g.nb(); ++j) {
      const double s2 = std::sin(2.0 * g.beta[static_cast<std::size_t>(j)]);
      if (s2 < 0.05) continue;
      // Plain d/db via the exact D_beta hook divided by sin(2b).
      const double pb_om = db_om.at(i, j) / s2;
      const double pb_et = db_et.at(i, j) / s2;
      const double adv_om =
          a * vel.ur_over_r.at(i, j) * dr_om.at(i, j) + vel.ubeta_over_r.at(i, j) * pb_om;
      const double adv_et =
          a * vel.ur_over_r.at(i, j) * dr_et.at(i, j) + vel.ubeta_over_r.at(i, j) * pb_et;

      const double rom = acl * dr_om.at(i, j) + adv_om + prof.omega_bar.at(i, j) -
                         prof.eta_bar.at(i, j);
      const double ret = acl * dr_et.at(i, j) + adv_et +
                         (2.0 + vel.u_x.at(i, j)) * prof.eta_bar.at(i, j);

      sup_rom = std::max(sup_rom, std::abs(rom));
      sup_ret = std::max(sup_ret, std::abs(ret));
      sup_om = std::max(sup_om, std::abs(prof.omega_bar.at(i, j)));
      sup_et = std::max(sup_et, std::abs(prof.eta_bar.at(i, j)));
    }
  }

  ProfileResidual out;
  out.ratio_omega = sup_rom / sup_om;
  out.ratio_eta = sup_ret / sup_et;
  out.c_omega_bar = prof.c_omega_bar;
  out.c_l_bar = prof.c_l_bar;
  return out;
}

RescalingTrace rescaling_bookkeeping(const std::vector<double>& c_omega_trace,
                                     const std::vector<double>& c_l_trace, double dtau,
                                     double C_omega0, double C_theta0) {
  if (c_omega_trace.size() != c_l_trace.size() || c_omega_trace.empty())
    throw std::invalid_argument("rescaling_bookkeeping: trace size mismatch");
  if (dtau <= 0.0) throw std::invalid_argument("rescaling_bookkeeping: dtau must be positive");

  const std::size_t n = c_omega_trace.size();
  RescalingTrace tr;
  tr.tau.resize(n);
  tr.C_omega.resize(n);
  tr.C_l.resize(n);
  tr.C_theta.resize(n);
  tr.t_phys.resize(n);

  double int_com = 0.0, int_cl = 0.0, int_t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      int_com += 0.5 * dtau * (c_omega_trace[k - 1] + c_omega_trace[k]);
      int_cl += 0.5 * dtau * (c_l_trace[k - 1] + c_l_trace[k]);
    }
    tr.tau[k] = dtau * static_cast<double>(k);
    tr.C_omega[k] = C_omega0 * std::exp(int_com);
    tr.C_l[k] = std::exp(-int_cl);
    tr.C_theta[k] = C_theta0 * std::exp(int_cl + 2.0 * int_com);
    if (k > 0) int_t += 0.5 * dtau * (tr.C_omega[k - 1] + tr.C_omega[k]);
    tr.t_phys[k] = int_t;
  }
  return tr;
}

}  // namespace blowlab

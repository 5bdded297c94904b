#include "blowlab/elliptic.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowlab/numerics.hpp"
#include "blowlab/operators.hpp"

namespace blowlab {
namespace {

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double a = std::exp(-1.0 / s);
  double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

// 1 for R <= lambda, 0 for R >= 2 lambda, smooth in between.
double cutoff_chi(double R, double lambda) { return 1.0 - smooth_step(R / lambda - 1.0); }

// Tensor-product solve of the stream-function operator on arbitrary radial
// nodes x = log R (5-point stencils) and interior beta nodes with zero
// Dirichlet ghosts at blo/bhi (3-point stencils). Radial boundary rows are
// pinned to bc_lo/bc_hi. Duplicate triplets are summed by Eigen.
std::vector<double> solve_core(double alpha, const std::vector<double>& x,
                               const std::vector<double>& beta, double blo, double bhi,
                               const std::vector<double>& rhs,
                               const std::vector<double>& bc_lo,
                               const std::vector<double>& bc_hi, double C_l,
                               double delta_cut) {
  const int nr = static_cast<int>(x.size());
  const int nb = static_cast<int>(beta.size());
  const int N = nr * nb;

  std::vector<double> ext(nb + 2);
  ext[0] = blo;
  for (int j = 0; j < nb; ++j) ext[j + 1] = beta[j];
  ext[nb + 1] = bhi;

  const double lambda = C_l > 0.0 ? delta_cut * std::pow(C_l, -alpha) : 0.0;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(N) * 12);
  Eigen::VectorXd b(N);

  for (int i = 0; i < nr; ++i) {
    const double R = std::exp(x[i]);
    const bool boundary = (i == 0 || i == nr - 1);

    double chi = 0.0, rho = 0.0, r_cyl = 1.0;
    if (!boundary && C_l > 0.0) {
      chi = cutoff_chi(R, lambda);
      if (chi > 0.0) rho = std::exp(x[i] / alpha);
    }

    // Radial stencil window: 5 nodes, clamped at the ends.
    int s = std::clamp(i - 2, 0, nr - 5);
    std::vector<double> xwin(x.begin() + s, x.begin() + s + 5);
    std::vector<double> wx1, wx2;
    if (!boundary) {
      wx1 = fd_weights(x[i], xwin, 1);
      wx2 = fd_weights(x[i], xwin, 2);
    }

    for (int j = 0; j < nb; ++j) {
      const int row = i * nb + j;
      if (boundary) {
        trips.emplace_back(row, row, 1.0);
        b[row] = (i == 0) ? bc_lo[j] : bc_hi[j];
        continue;
      }

      const double sb = std::sin(beta[j]);
      const double cb = std::cos(beta[j]);

      double coef_x1 = -4.0 * alpha;     // on d/dx
      double coef_id = -4.0;             // on Psi
      double coef_b1 = 0.0;              // on d/dbeta
      double rhs_factor = 1.0;
      if (chi > 0.0) {
        r_cyl = 1.0 - C_l * rho * sb;
        if (r_cyl <= 0.0)
          throw std::runtime_error("elliptic: cylinder radius factor vanished in the cutoff region");
        const double g = chi * C_l * rho / r_cyl;
        coef_id += g * sb * 2.0 + chi * C_l * C_l * rho * rho / (r_cyl * r_cyl);
        coef_x1 += g * sb * alpha;  // a D_R = a d/dx
        coef_b1 += g * cb;
        rhs_factor = 1.0 - chi * C_l * rho * sb;  // source picks up the r factor
      }

      for (int k = 0; k < 5; ++k) {
        const int col = (s + k) * nb + j;
        trips.emplace_back(row, col, -alpha * alpha * wx2[k] + coef_x1 * wx1[k]);
      }

      // Beta window: ext indices j, j+1, j+2 centered on the unknown.
      std::vector<double> bwin = {ext[j], ext[j + 1], ext[j + 2]};
      std::vector<double> wb2 = fd_weights(beta[j], bwin, 2);
      std::vector<double> wb1 = fd_weights(beta[j], bwin, 1);
      for (int k = 0; k < 3; ++k) {
        const int jj = j - 1 + k;
        if (jj < 0 || jj >= nb) continue;  // ghost rows carry value zero
        trips.emplace_back(row, i * nb + jj, -wb2[k] + coef_b1 * wb1[k]);
      }

      trips.emplace_back(row, row, coef_id);
      b[row] = rhs[row] * rhs_factor;
    }
  }

  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("elliptic: sparse factorization failed");
  Eigen::VectorXd sol = lu.solve(b);
  if (lu.info() != Eigen::Success) throw std::runtime_error("elliptic: solve failed");

  std::vector<double> out(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) out[static_cast<std::size_t>(k)] = sol[k];
  return out;
}

// Plain d/dbeta along each grid row (the GL nodes are non-uniform).
PolarField partial_beta(const PolarField& f) {
  const auto& g = *f.grid;
  PolarField out(f.grid);
  std::vector<double> row(static_cast<std::size_t>(g.nb()));
  for (int i = 0; i < g.nr(); ++i) {
    for (int j = 0; j < g.nb(); ++j) row[static_cast<std::size_t>(j)] = f.at(i, j);
    auto d = fd_derivative(g.beta, row, 1);
    for (int j = 0; j < g.nb(); ++j) out.at(i, j) = d[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace

PolarField solve_elliptic(const EllipticProblem& prob) {
  if (!prob.grid) throw std::invalid_argument("elliptic: missing grid");
  if (prob.source.grid != prob.grid)
    throw std::invalid_argument("elliptic: source lives on a different grid");
  if (!prob.source.finite()) throw std::invalid_argument("elliptic: source is not finite");
  if (prob.C_l < 0.0) throw std::invalid_argument("elliptic: C_l must be >= 0");
  if (prob.delta_cut <= 0.0 || prob.delta_cut > 0.25)
    throw std::invalid_argument("elliptic: delta_cut must lie in (0, 1/4]");

  const auto& g = *prob.grid;
  const double a = g.alpha.value;

  std::vector<double> bc_lo(static_cast<std::size_t>(g.nb()));
  std::vector<double> bc_hi(static_cast<std::size_t>(g.nb()));
  if (prob.bc) {
    for (int j = 0; j < g.nb(); ++j) {
      bc_lo[static_cast<std::size_t>(j)] = prob.bc(g.R.front(), g.beta[static_cast<std::size_t>(j)]);
      bc_hi[static_cast<std::size_t>(j)] = prob.bc(g.R.back(), g.beta[static_cast<std::size_t>(j)]);
    }
  } else {
    // Separable tail asymptote at both radial ends.
    const double l_lo = l12(prob.source, g.R.front());
    const double l_hi = l12(prob.source, g.R.back());
    for (int j = 0; j < g.nb(); ++j) {
      const double s2 = std::sin(2.0 * g.beta[static_cast<std::size_t>(j)]);
      bc_lo[static_cast<std::size_t>(j)] = s2 * l_lo / (kPi * a);
      bc_hi[static_cast<std::size_t>(j)] = s2 * l_hi / (kPi * a);
    }
  }

  auto vals = solve_core(a, g.logR, g.beta, 0.0, kPi / 2.0, prob.source.v, bc_lo, bc_hi,
                         prob.C_l, prob.delta_cut);
  PolarField psi(prob.grid);
  psi.v = std::move(vals);
  return psi;
}

PolarField psi_star(const PolarField& psi, const PolarField& omega) {
  if (psi.grid != omega.grid)
    throw std::invalid_argument("psi_star: fields live on different grids");
  const auto& g = *psi.grid;
  const double a = g.alpha.value;
  auto tail = l12_all_nodes(omega);
  PolarField out(psi.grid);
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.nb(); ++j)
      out.at(i, j) = psi.at(i, j) -
                     std::sin(2.0 * g.beta[static_cast<std::size_t>(j)]) *
                         tail[static_cast<std::size_t>(i)] / (kPi * a);
  return out;
}

VelocityParts reconstruct_velocity(const PolarField& psi, const PolarField& omega) {
  if (psi.grid != omega.grid)
    throw std::invalid_argument("reconstruct_velocity: fields live on different grids");
  const auto& g = *psi.grid;
  const double a = g.alpha.value;

  auto tail = l12_all_nodes(omega);
  PolarField psis = psi_star(psi, omega);
  PolarField dr_psi = diff_DR(psi, 1);
  PolarField dr2_psi = diff_DR(psi, 2);
  PolarField db_psi = partial_beta(psi);
  PolarField db_dr_psi = partial_beta(dr_psi);

  VelocityParts parts;
  parts.ur_over_r = PolarField(psi.grid);
  parts.ubeta_over_r = PolarField(psi.grid);
  parts.u_x = PolarField(psi.grid);

  for (int i = 0; i < g.nr(); ++i) {
    const double L = tail[static_cast<std::size_t>(i)];
    for (int j = 0; j < g.nb(); ++j) {
      const double bb = g.beta[static_cast<std::size_t>(j)];
      const double sb = std::sin(bb), cb = std::cos(bb);
      const double s2 = 2.0 * sb * cb, c2 = cb * cb - sb * sb;

      const double P = psi.at(i, j);
      const double Px = dr_psi.at(i, j);
      const double Pxx = dr2_psi.at(i, j);
      const double Pb = db_psi.at(i, j);
      const double Pxb = db_dr_psi.at(i, j);
      const double Ps = psis.at(i, j);
      // d_b Psi_*: the subtracted tail term differentiates in closed form.
      const double Psb = Pb - 2.0 * c2 * L / (kPi * a);

      parts.ur_over_r.at(i, j) = -(2.0 / (kPi * a)) * c2 * L - Psb;
      parts.ubeta_over_r.at(i, j) = (2.0 / (kPi * a)) * s2 * L + 2.0 * Ps + a * Px;

      // u = -r W with W = 2 sin(b) Psi + a sin(b) D_R Psi + cos(b) d_b Psi;
      // u_x = -(cos(b) W + a cos(b) D_R W - sin(b) d_b W), where the second
      // angular derivative inside d_b W is replaced through the PDE.
      const double W = 2.0 * sb * P + a * sb * Px + cb * Pb;
      const double Wx = 2.0 * sb * Px + a * sb * Pxx + cb * Pxb;
      const double Pbb = -omega.at(i, j) - 4.0 * P - a * a * Pxx - 4.0 * a * Px;
      const double Wb = 2.0 * cb * P + sb * Pb + a * cb * Px + a * sb * Pxb + cb * Pbb;
      parts.u_x.at(i, j) = -(cb * W + a * cb * Wx - sb * Wb);
    }
  }
  return parts;
}

std::vector<double> manufactured_convergence(Alpha alpha, const std::vector<int>& nb_list,
                                             int nr) {
  const double a = alpha.value;
  const double X = 8.0;
  std::vector<double> x(static_cast<std::size_t>(nr));
  for (int i = 0; i < nr; ++i)
    x[static_cast<std::size_t>(i)] = -X + 2.0 * X * i / (nr - 1);

  auto f = [](double t) { return std::exp(-t * t / 8.0); };
  auto fp = [&](double t) { return -t / 4.0 * f(t); };
  auto fpp = [&](double t) { return (-0.25 + t * t / 16.0) * f(t); };

  std::vector<double> errs;
  for (int nb : nb_list) {
    if (nb < 4) throw std::invalid_argument("manufactured_convergence: nb too small");
    std::vector<double> beta(static_cast<std::size_t>(nb));
    const double h = (kPi / 2.0) / (nb + 1);
    for (int j = 0; j < nb; ++j) beta[static_cast<std::size_t>(j)] = h * (j + 1);

    std::vector<double> rhs(static_cast<std::size_t>(nr) * nb);
    std::vector<double> bc_lo(static_cast<std::size_t>(nb)), bc_hi(static_cast<std::size_t>(nb));
    for (int j = 0; j < nb; ++j) {
      const double s2 = std::sin(2.0 * beta[static_cast<std::size_t>(j)]);
      bc_lo[static_cast<std::size_t>(j)] = s2 * f(x.front());
      bc_hi[static_cast<std::size_t>(j)] = s2 * f(x.back());
      for (int i = 0; i < nr; ++i) {
        const double t = x[static_cast<std::size_t>(i)];
        rhs[static_cast<std::size_t>(i) * nb + j] = s2 * (-a * a * fpp(t) - 4.0 * a * fp(t));
      }
    }

    auto sol = solve_core(a, x, beta, 0.0, kPi / 2.0, rhs, bc_lo, bc_hi, 0.0, 1.0 / 16.0);
    double err = 0.0;
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nb; ++j) {
        const double exact =
            std::sin(2.0 * beta[static_cast<std::size_t>(j)]) * f(x[static_cast<std::size_t>(i)]);
        err = std::max(err, std::abs(sol[static_cast<std::size_t>(i) * nb + j] - exact));
      }
    errs.push_back(err);
  }
  return errs;
}

double profile_shape_deviation(Alpha alpha, GridPtr grid) {
  auto pf = profile_fields(alpha, grid);
  EllipticProblem prob;
  prob.grid = grid;
  prob.source = pf.omega_bar;
  PolarField psi = solve_elliptic(prob);

  const auto& g = *grid;
  double dev = 0.0, ref_sup = 0.0;
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.nb(); ++j) {
      const double ref = 1.5 * std::sin(2.0 * g.beta[static_cast<std::size_t>(j)]) /
                         (1.0 + g.R[static_cast<std::size_t>(i)]);
      dev = std::max(dev, std::abs(psi.at(i, j) - ref));
      ref_sup = std::max(ref_sup, std::abs(ref));
    }
  return dev / ref_sup;
}

}  // namespace blowlab

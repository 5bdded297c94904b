#include "blowlab/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "blowlab/numerics.hpp"

namespace blowlab {

Alpha::Alpha(double v) : value(v) {
  if (!(v > 0.0) || v > 0.25)
    throw std::invalid_argument("Alpha: need 0 < alpha <= 1/4");
}

namespace {

// End-corrected composite weights (6th order) for a uniform grid of n nodes.
std::vector<double> corrected_uniform_weights(int n, double h) {
  if (n < 12) throw std::invalid_argument("corrected_uniform_weights: n too small");
  static const double edge[5] = {95.0 / 288.0, 317.0 / 240.0, 23.0 / 30.0,
                                 793.0 / 720.0, 157.0 / 160.0};
  std::vector<double> w(n, h);
  for (int k = 0; k < 5; ++k) {
    w[k] = edge[k] * h;
    w[n - 1 - k] = edge[k] * h;
  }
  return w;
}

}  // namespace

std::shared_ptr<const PolarGrid> PolarGrid::make(Alpha alpha, double r_min, double r_max,
                                                 int n_r, int n_beta) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw std::invalid_argument("PolarGrid: bad R range");
  if (n_r < 16 || n_beta < 8)
    throw std::invalid_argument("PolarGrid: grid too coarse");

  auto g = std::shared_ptr<PolarGrid>(new PolarGrid(alpha));
  g->R.resize(n_r);
  g->logR.resize(n_r);
  const double x0 = std::log(r_min), x1 = std::log(r_max);
  g->h_logR = (x1 - x0) / (n_r - 1);
  for (int i = 0; i < n_r; ++i) {
    g->logR[i] = x0 + i * g->h_logR;
    g->R[i] = std::exp(g->logR[i]);
  }
  // int f dR = int f R dlogR on the uniform log grid.
  g->wR = corrected_uniform_weights(n_r, g->h_logR);
  for (int i = 0; i < n_r; ++i) g->wR[i] *= g->R[i];

  gauss_legendre_ab(n_beta, 0.0, kPi / 2, g->beta, g->wbeta);

  double s = 0.0;
  for (int j = 0; j < n_beta; ++j) s += g->wbeta[j] * std::sin(2.0 * g->beta[j]);
  if (std::abs(s - 1.0) > 1e-10)
    throw std::runtime_error("PolarGrid: beta quadrature fails the sin(2b) check");
  return g;
}

PolarField::PolarField(GridPtr g)
    : grid(std::move(g)),
      v(static_cast<std::size_t>(grid->nr()) * grid->nb(), 0.0) {}

bool PolarField::finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

PolarField make_field(GridPtr g, const std::function<double(double, double)>& f) {
  PolarField out(std::move(g));
  const auto& gr = *out.grid;
  for (int i = 0; i < gr.nr(); ++i)
    for (int j = 0; j < gr.nb(); ++j) out.at(i, j) = f(gr.R[i], gr.beta[j]);
  out.eval = f;
  return out;
}

}  // namespace blowlab

#include "blowlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace blowlab {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-flavored initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void gauss_legendre_ab(int n, double a, double b,
                       std::vector<double>& nodes, std::vector<double>& weights) {
  gauss_legendre(n, nodes, weights);
  const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + hw * nodes[i];
    weights[i] *= hw;
  }
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  // B. Fornberg, "Generation of finite difference formulas on arbitrarily
  // spaced grids", Math. Comp. 51 (1988).
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < m) throw std::invalid_argument("fd_weights: not enough nodes");
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> fd_derivative(const std::vector<double>& x,
                                  const std::vector<double>& f, int m) {
  const int n = static_cast<int>(x.size());
  if (n < 8) throw std::invalid_argument("fd_derivative: grid too coarse (need >= 8 nodes)");
  const int sw = 5;  // 5-node stencils: 4th order for m = 1, 3rd+ for m = 2
  std::vector<double> out(n, 0.0);
  std::vector<double> sx(sw);
  for (int i = 0; i < n; ++i) {
    int lo = std::clamp(i - sw / 2, 0, n - sw);
    for (int k = 0; k < sw; ++k) sx[k] = x[lo + k];
    auto w = fd_weights(x[i], sx, m);
    double acc = 0.0;
    for (int k = 0; k < sw; ++k) acc += w[k] * f[lo + k];
    out[i] = acc;
  }
  return out;
}

double interp_cubic(const std::vector<double>& x, const std::vector<double>& f, double xq) {
  const int n = static_cast<int>(x.size());
  if (n < 4) throw std::invalid_argument("interp_cubic: need >= 4 nodes");
  int j = static_cast<int>(std::lower_bound(x.begin(), x.end(), xq) - x.begin());
  int lo = std::clamp(j - 2, 0, n - 4);
  double acc = 0.0;
  for (int i = lo; i < lo + 4; ++i) {
    double li = 1.0;
    for (int k = lo; k < lo + 4; ++k)
      if (k != i) li *= (xq - x[k]) / (x[i] - x[k]);
    acc += li * f[i];
  }
  return acc;
}

double find_root(const std::function<double(double)>& g, double lo, double hi,
                 double tol, const std::function<double(double)>* dg) {
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (glo * ghi > 0.0) throw std::runtime_error("find_root: bracket does not straddle a root");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm == 0.0) return mid;
    if (glo * gm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  double x = 0.5 * (lo + hi);
  if (dg) {
    double d = (*dg)(x);
    if (d != 0.0) {
      double xn = x - g(x) / d;
      if (xn >= lo - tol && xn <= hi + tol) x = xn;
    }
  }
  return x;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need >= 2 matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<std::vector<double>> latin_hypercube(int n, int dim, Rng& rng) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim, 0.0));
  std::vector<int> perm(n);
  for (int d = 0; d < dim; ++d) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {  // Fisher-Yates with our own RNG
      int j = static_cast<int>(rng.u01() * (i + 1));
      if (j > i) j = i;
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n; ++i) pts[i][d] = (perm[i] + rng.u01()) / n;
  }
  return pts;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int nt = 1;
  if (const char* env = std::getenv("BLOWLAB_THREADS")) nt = std::max(1, std::atoi(env));
  nt = std::min(nt, n > 0 ? n : 1);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([=, &fn]() {
      for (int i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace blowlab

// Shared numerical kernels: quadrature nodes, finite-difference weights,
// root finding, RK4, sampling, small utilities.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowlab {

inline constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1, 1], by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Same, mapped to [a, b].
void gauss_legendre_ab(int n, double a, double b,
                       std::vector<double>& nodes, std::vector<double>& weights);

// Finite-difference weights on arbitrary nodes (Fornberg's algorithm).
// Returns weights so that f^(m)(x0) ~ sum_i w[i] f(nodes[i]).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

// Derivative of order m on a 1-D grid, 4th-order stencils (5 nodes), one-sided
// closure at the ends. Nodes may be non-uniform.
std::vector<double> fd_derivative(const std::vector<double>& x,
                                  const std::vector<double>& f, int m);

// Cubic Lagrange interpolation on a sorted grid (4-point local stencil).
double interp_cubic(const std::vector<double>& x, const std::vector<double>& f, double xq);

// Bracketed root finding: bisection to tol then one Newton polish using a
// supplied derivative (pass nullptr to skip the polish).
double find_root(const std::function<double(double)>& g, double lo, double hi,
                 double tol = 1e-12, const std::function<double(double)>* dg = nullptr);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Classic RK4 step for a fixed-size state vector.
template <std::size_t N>
using OdeRhs = std::function<std::array<double, N>(double, const std::array<double, N>&)>;

template <std::size_t N>
std::array<double, N> rk4_step(const OdeRhs<N>& rhs, double t,
                               const std::array<double, N>& y, double dt) {
  auto ax = [](const std::array<double, N>& a, const std::array<double, N>& b, double s) {
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  auto k1 = rhs(t, y);
  auto k2 = rhs(t + dt / 2, ax(y, k1, dt / 2));
  auto k3 = rhs(t + dt / 2, ax(y, k2, dt / 2));
  auto k4 = rhs(t + dt, ax(y, k3, dt));
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

// Deterministic RNG with an explicit mapping to doubles so output is stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Latin hypercube sample of n points in [0,1]^dim.
std::vector<std::vector<double>> latin_hypercube(int n, int dim, Rng& rng);

// FNV-1a over a byte string; used for config/report hashing.
std::uint64_t fnv1a(const std::string& bytes);

// Run fn(i) for i in [0, n) across BLOWLAB_THREADS threads (default 1).
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace blowlab

// Polar (R, beta) grids and nodal fields for the self-similar coordinate system.
#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace blowlab {

// Scaling exponent of R = r^alpha. The analysis assumes alpha <= 1/4.
struct Alpha {
  double value;
  explicit Alpha(double v);
};

// Log-spaced R nodes on [R_min, R_max], Gauss-Legendre beta nodes on (0, pi/2).
// wR integrates dR (end-corrected composite rule in log R), wbeta integrates dbeta.
class PolarGrid {
 public:
  static std::shared_ptr<const PolarGrid> make(Alpha alpha, double r_min = 1e-6,
                                               double r_max = 1e6, int n_r = 512,
                                               int n_beta = 128);

  Alpha alpha;
  std::vector<double> R;      // strictly increasing, log-spaced
  std::vector<double> logR;   // uniform
  std::vector<double> wR;     // nodal weights for integrals in dR
  std::vector<double> beta;   // interior GL nodes
  std::vector<double> wbeta;  // GL weights for integrals in dbeta
  double h_logR = 0.0;

  int nr() const { return static_cast<int>(R.size()); }
  int nb() const { return static_cast<int>(beta.size()); }

 private:
  PolarGrid(Alpha a) : alpha(a) {}
};

using GridPtr = std::shared_ptr<const PolarGrid>;

// Scalar field sampled at grid nodes. Optionally carries a closed-form
// evaluator, exact derivative evaluator (D_R^i D_beta^j), and separable
// metadata used by the tail-exact integral operators.
struct PolarField {
  GridPtr grid;
  std::vector<double> v;  // row-major, index iR * nb + jB

  std::function<double(double R, double beta)> eval;          // optional
  std::function<double(int i, int j, double R, double beta)> deriv;  // optional

  // Optional separable structure f(R, beta) = radial(R) * angular(beta) with an
  // exact radial tail integral T(R) = int_R^inf radial(s)/s ds.
  bool separable = false;
  std::function<double(double)> radial;
  std::function<double(double)> angular;
  std::function<double(double)> radial_tail;

  PolarField() = default;
  explicit PolarField(GridPtr g);

  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * grid->nb() + j]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * grid->nb() + j]; }

  bool finite() const;
};

// Nodal samples of a closed-form function; keeps the evaluator attached.
PolarField make_field(GridPtr g, const std::function<double(double, double)>& f);

}  // namespace blowlab

#pragma once

#include <complex>
#include <vector>

#include "treeharm/errors.hpp"
#include "treeharm/spectral.hpp"

namespace treeharm {

// Uniform periodic grid on the spectral interval [-tau/2, tau/2):
// nodes lambda_j = -tau/2 + j tau/M, j = 0..M-1, equal weights tau/M.
// M must be even and >= 8, so that 0 and -tau/2 are nodes.  The trapezoid
// rule on this grid integrates q^(i lambda n) exactly for |n| < M, which is
// what the transform pair needs.
class QuadratureGrid {
 public:
  QuadratureGrid(const SpectralParams& sp, int nodes);

  int q() const { return q_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double tau() const { return tau_; }
  double weight() const { return tau_ / size(); }
  double node(int j) const { return nodes_[j]; }
  const std::vector<double>& nodes() const { return nodes_; }

  // Every other node: the same rule with half the resolution.  Comparing an
  // integral on the two grids gives a computable error estimate.
  QuadratureGrid coarsened() const;

 private:
  QuadratureGrid() = default;
  int q_ = 0;
  double tau_ = 0.0;
  std::vector<double> nodes_;
};

// Gauss-Legendre rule with n points on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Integrate f over [a, b] split into `panels` equal panels, Gauss-Legendre
// within each panel.
template <class F>
std::complex<double> integrate_panels(F&& f, double a, double b, int panels,
                                      const GaussRule& rule) {
  std::complex<double> total = 0.0;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + 0.5 * h;
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace treeharm

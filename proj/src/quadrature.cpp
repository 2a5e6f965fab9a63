#include "treeharm/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace treeharm {

QuadratureGrid::QuadratureGrid(const SpectralParams& sp, int nodes)
    : q_(sp.q), tau_(sp.tau) {
  if (nodes < 8 || nodes % 2 != 0)
    throw parameter_error("node count must be even and >= 8");
  nodes_.resize(nodes);
  double h = tau_ / nodes;
  for (int j = 0; j < nodes; ++j) nodes_[j] = -0.5 * tau_ + j * h;
}

QuadratureGrid QuadratureGrid::coarsened() const {
  if (size() < 16)
    throw parameter_error("grid too small to coarsen");
  QuadratureGrid g;
  g.q_ = q_;
  g.tau_ = tau_;
  g.nodes_.resize(size() / 2);
  for (int j = 0; j < g.size(); ++j) g.nodes_[j] = nodes_[2 * j];
  return g;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw parameter_error("rule size must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace treeharm

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "treeharm/quadrature.hpp"
#include "treeharm/riesz.hpp"
#include "treeharm/transforms.hpp"
#include "treeharm/tree.hpp"

namespace treeharm {

// Time parameter of the semigroup e^(-tL), L = I - M.
struct HeatParams {
  double time;
  explicit HeatParams(double time);
};

struct HeatKernel {
  RadialFunction values;
  double quad_budget;   // spectral inversion error, per shell value
  double tail_mass;     // kernel mass beyond the stored shells (>= 0)
};

// h_t = inverse spherical transform of e^(-t (1 - gamma(lambda))).  The full
// kernel has total mass exactly 1 and is nonnegative; tail_mass estimates
// what the stored shells miss.
HeatKernel heat_kernel(const HeatParams& hp, const QuadratureGrid& grid,
                       int shells);

// e^(-tL) f = f * h_t on the ball of radius eval_radius.  Budget combines
// the kernel's quadrature error with the mass dropped by shell truncation.
TreeFunctionWithBudget heat_apply(const HeatParams& hp, const TreeFunction& f,
                                  const QuadratureGrid& grid, int shells,
                                  int eval_radius);

struct SpectralNormCheck {
  double observed;    // sup over grid nodes of e^(-t (1 - gamma))
  double expected;    // e^(-t (1 - gamma0)), the operator norm on l^2
  double deviation;
  bool contraction;   // observed <= 1
};

// The l^2 operator norm of e^(-tL) read off the multiplier on the grid; the
// sup is attained at lambda = 0, which is always a node.
SpectralNormCheck heat_l2_norm_check(const HeatParams& hp,
                                     const QuadratureGrid& grid);

// (sup over t in `times` of |e^(-tL) f|)(x), sharing the distance buckets.
TreeFunctionWithBudget heat_maximal_apply(std::span<const double> times,
                                          const TreeFunction& f,
                                          const QuadratureGrid& grid,
                                          int shells, int eval_radius);

// One smoothing step g = e^(-(1/t) L) e^(-s L) f and its distance to f.
struct SmoothingRow {
  double s;
  double t;
  double norm_l1;        // ||g - f||_1 and the other two norms
  double norm_l2;
  double norm_sup;
  double budget_l1;      // bounds on the error of each reported norm
  double budget_l2;
  double budget_sup;
};

// Deviation of the summation operator from the identity on the smoothed
// function, at the base vertex.
struct SmoothedPointRow {
  double s;
  double t;
  double threshold;      // R
  double deviation;      // |S_R g(o) - g(o)|
  double budget;
};

struct SmoothingExperiment {
  std::vector<SmoothingRow> approx;
  std::vector<SmoothedPointRow> point;
};

// For each (s, t) in the schedule, smooth f twice, record how close the
// result is to f in l^1, l^2 and sup norm, and how fast the summation
// operators converge on it at the base vertex for each threshold in
// `thresholds`.  inner_radius truncates the first smoothing, outer_radius
// the second; both truncations are accounted for in the budgets.
SmoothingExperiment dense_subspace_experiment(
    const TreeFunction& f, std::span<const std::pair<double, double>> schedule,
    cxd z, std::span<const double> thresholds, const QuadratureGrid& grid,
    int shells, int inner_radius, int outer_radius);

}  // namespace treeharm

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "treeharm/quadrature.hpp"
#include "treeharm/spectral.hpp"
#include "treeharm/transforms.hpp"
#include "treeharm/tree.hpp"

namespace treeharm {

// Order z and threshold R of the summation method.  Re z > 0, R > 0.
struct RieszParams {
  cxd z;
  double R;

  RieszParams(cxd z, double R);
};

// m(lambda) = (1 - (1 - gamma(lambda))/R)_+^z with the principal branch;
// the positive part makes the base nonnegative, and 0^z = 0.
cxd riesz_multiplier(const SpectralParams& sp, const RieszParams& rp,
                     double lambda);

// Convolution kernel of the summation operator, shells 0..shells, computed
// by inverting the multiplier against the spectral density.  For R >= 2 the
// multiplier is smooth and periodic and the grid rule converges fast; for
// R < 2 the positive part introduces a kink, so the integral is done with
// Gauss-Legendre panels split at the kink.
RadialWithBudget riesz_kernel_spectral(const RieszParams& rp,
                                       const QuadratureGrid& grid, int shells);

// Same kernel through the horocycle route: Fourier-invert the multiplier to
// a boundary sequence, then pull back to shells by the weighted difference
// series with `series_cutoff` terms.
RadialWithBudget riesz_kernel_horocycle(const RieszParams& rp,
                                        const QuadratureGrid& grid, int shells,
                                        int series_cutoff);

// q^(n/2) |kappa(n)| is bounded by q/(q-1), uniformly in z and R.
double decay_bound(int q);

struct KernelReport {
  RadialFunction spectral_route;
  RadialFunction horocycle_route;
  std::vector<double> decay_ratio;   // q^(n/2) |kappa(n)|, spectral route
  double route_discrepancy;          // max_n of the two routes' difference
  double budget;                     // sum of both route budgets
};

KernelReport kernel_report(const RieszParams& rp, const QuadratureGrid& grid,
                           int shells, int series_cutoff);

struct TreeFunctionWithBudget {
  TreeFunction values;
  double budget;   // pointwise bound on the evaluation error
};

// Summation operator with a precomputed kernel, reusable across inputs.
class RieszOperator {
 public:
  RieszOperator(const RieszParams& rp, const QuadratureGrid& grid, int shells);

  const RieszParams& params() const { return params_; }
  const RadialFunction& kernel() const { return kernel_; }
  double kernel_budget() const { return kernel_budget_; }

  TreeFunctionWithBudget apply(const TreeFunction& f, int eval_radius) const;

  // Reuse precomputed distance buckets; f_l1 is the l^1 norm of the input
  // the plan was built from.
  TreeFunctionWithBudget apply(const ConvolutionPlan& plan, double f_l1) const;

  // Pointwise evaluation error bound for an input of the given l^1 norm.
  double budget_for(double f_l1) const;

 private:
  RieszParams params_;
  RadialFunction kernel_;
  double kernel_budget_;
};

TreeFunctionWithBudget riesz_apply(const RieszParams& rp,
                                   const TreeFunction& f,
                                   const QuadratureGrid& grid, int shells,
                                   int eval_radius);

// (sup over R in `thresholds` of |S_R f|)(x) for |x| <= eval_radius.  The
// distance buckets of f are computed once and shared by all thresholds.
TreeFunctionWithBudget maximal_apply(cxd z, std::span<const double> thresholds,
                                     const TreeFunction& f,
                                     const QuadratureGrid& grid, int shells,
                                     int eval_radius);

// kappa_q(n) = q^(-n/2), the comparison kernel dominating every summation
// kernel up to the factor q/(q-1); carries its geometric tail ratio.
RadialFunction comparison_kernel(int q, int shells);

struct LqNorm {
  double value;     // meaningful only when diverges is false
  bool diverges;
};

// Shell-counting L^p norm of a radial kernel, p in [1, inf).  If the kernel
// carries a geometric tail the series beyond the stored shells is summed in
// closed form, or flagged as divergent when the ratio q t^p reaches 1.
LqNorm radial_lq_norm(const RadialFunction& k, double p);

}  // namespace treeharm

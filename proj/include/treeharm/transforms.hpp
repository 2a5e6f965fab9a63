#pragma once

#include <complex>
#include <span>
#include <vector>

#include "treeharm/quadrature.hpp"
#include "treeharm/spectral.hpp"
#include "treeharm/tree.hpp"

namespace treeharm {

// Samples of a spectral-side function on a quadrature grid.
class SpectralFunction {
 public:
  SpectralFunction(QuadratureGrid grid, std::vector<cxd> samples);

  template <class F>
  static SpectralFunction sample(const QuadratureGrid& grid, F&& f) {
    std::vector<cxd> s(grid.size());
    for (int j = 0; j < grid.size(); ++j) s[j] = f(grid.node(j));
    return SpectralFunction(grid, std::move(s));
  }

  const QuadratureGrid& grid() const { return grid_; }
  const std::vector<cxd>& samples() const { return samples_; }
  cxd operator[](int j) const { return samples_[j]; }

  // Restriction to every other node, for two-resolution error estimates.
  SpectralFunction coarsened() const;

 private:
  QuadratureGrid grid_;
  std::vector<cxd> samples_;
};

struct RadialWithBudget {
  RadialFunction values;
  double budget;   // bound on the error of the returned values
};

struct SequenceWithBudget {
  std::vector<cxd> values;
  double budget;
};

// (Hf)(lambda) = f(0) + sum_{n>=1} (q+1) q^(n-1) f(n) phi_lambda(n),
// sampled on the grid.
SpectralFunction spherical_transform(const RadialFunction& f,
                                     const QuadratureGrid& grid);

// f(n) = integral of F(lambda) phi_lambda(n) against the spectral density
// over [-tau/2, tau/2], by the trapezoid rule on the grid.  Requires
// grid size >= 2*shells + 8, else resolution_error.  The budget is the
// difference against the half-resolution grid plus a roundoff floor.
RadialWithBudget inverse_spherical(const SpectralFunction& F, int shells);

// v(n) = (1/tau) * integral of F(lambda) q^(-i lambda n) d lambda,
// n = 0..max_index, by the trapezoid rule.  Same resolution rule with
// max_index in place of shells.
SequenceWithBudget fourier_inverse(const SpectralFunction& F, int max_index);

// v(n) = sum_{k=0}^{K} q^(-n/2-k) ( g(n+2k) - g(n+2k+2) ),  K = series_cutoff;
// entries of g beyond the stored range count as 0.  The discarded tail is
// bounded by 2 sup|g| q^(-K-1) / (1 - 1/q); if `tolerance` > 0 and the bound
// exceeds it, throws tolerance_error.  The bound is returned as the budget.
RadialWithBudget abel_inverse(int q, std::span<const cxd> g, int shells,
                              int series_cutoff, double tolerance = 0.0);

// l^2 norm of a radial function with the shell counting measure.
double radial_l2_norm(const RadialFunction& f);

// l^2 norm of spectral samples against the spectral density, by the
// trapezoid rule on the grid.
double spectral_l2_norm(const SpectralFunction& F);

}  // namespace treeharm

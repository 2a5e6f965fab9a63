#pragma once

#include <complex>
#include <vector>

#include "treeharm/errors.hpp"

namespace treeharm {

using cxd = std::complex<double>;

// Derived spectral constants of the tree with branching number q.
//
// The neighbour-average operator acting on radial functions has the
// one-parameter eigenvalue family gamma(lambda) = gamma0 * cos(lambda log q)
// with gamma0 = 2 / (q^(1/2) + q^(-1/2)); everything spectral is periodic in
// lambda with period tau = 2 pi / log q.
struct SpectralParams {
  int q;
  double log_q;
  double tau;      // spectral period 2 pi / log q
  double gamma0;   // top of the l^2 spectrum of the neighbour average

  explicit SpectralParams(int q);
};

// gamma(lambda) = gamma0 * cos(lambda log q)
double gamma_eigenvalue(const SpectralParams& sp, double lambda);
cxd gamma_eigenvalue(const SpectralParams& sp, cxd lambda);

// Harish-Chandra type coefficient
//   c(z) = [ q^(1/2+iz) - q^(-1/2-iz) ] / [ (q^(1/2)+q^(-1/2)) (q^(iz)-q^(-iz)) ].
// Poles where q^(iz) = q^(-iz), i.e. z in (tau/2) Z; throws pole_error when
// |q^(iz) - q^(-iz)| < 1e-12.
cxd c_function(const SpectralParams& sp, cxd z);

// Spectral density on [-tau/2, tau/2], normalised to total mass 1:
//   w(lambda) = (q+1) log q / pi * sin^2(lambda log q)
//                 / (q + 1/q - 2 cos(2 lambda log q)).
// Proportional to 1/|c(lambda)|^2; vanishes at lambda in (tau/2) Z; the
// denominator is bounded below by (q^(1/2)-q^(-1/2))^2 > 0.
double plancherel_weight(const SpectralParams& sp, double lambda);

// Radial eigenfunction of the neighbour average with eigenvalue
// gamma(lambda), normalised to 1 at the base vertex, evaluated on shells
// 0..shells.  Three-term recurrence
//   phi(0) = 1,  phi(1) = gamma,
//   phi(n+1) = ((q+1) gamma phi(n) - phi(n-1)) / q,
// which is the eigenvalue identity written shell by shell: at the base all
// q+1 neighbours sit on shell 1; at shell n >= 1 one neighbour drops to
// shell n-1 and q rise to shell n+1.  Both characteristic roots have modulus
// q^(-1/2) < 1, so forward evaluation is stable.
std::vector<double> spherical_function(const SpectralParams& sp, double lambda,
                                       int shells);
std::vector<cxd> spherical_function(const SpectralParams& sp, cxd lambda,
                                    int shells);

}  // namespace treeharm

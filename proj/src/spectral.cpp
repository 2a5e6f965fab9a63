#include "treeharm/spectral.hpp"

#include <cmath>
#include <numbers>

namespace treeharm {

SpectralParams::SpectralParams(int q) : q(q) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  log_q = std::log(static_cast<double>(q));
  tau = 2.0 * std::numbers::pi / log_q;
  double rq = std::sqrt(static_cast<double>(q));
  gamma0 = 2.0 / (rq + 1.0 / rq);
}

double gamma_eigenvalue(const SpectralParams& sp, double lambda) {
  return sp.gamma0 * std::cos(lambda * sp.log_q);
}

cxd gamma_eigenvalue(const SpectralParams& sp, cxd lambda) {
  return sp.gamma0 * std::cos(lambda * sp.log_q);
}

cxd c_function(const SpectralParams& sp, cxd z) {
  const cxd i(0.0, 1.0);
  cxd qiz = std::exp(i * z * sp.log_q);    // q^(iz)
  cxd den = qiz - 1.0 / qiz;
  if (std::abs(den) < 1e-12)
    throw pole_error("c function evaluated at a pole, z near (tau/2) Z");
  double rq = std::sqrt(static_cast<double>(sp.q));
  cxd num = rq * qiz - (1.0 / rq) / qiz;
  return num / ((rq + 1.0 / rq) * den);
}

double plancherel_weight(const SpectralParams& sp, double lambda) {
  double b = lambda * sp.log_q;
  double s = std::sin(b);
  double den = sp.q + 1.0 / sp.q - 2.0 * std::cos(2.0 * b);
  return (sp.q + 1) * sp.log_q / std::numbers::pi * s * s / den;
}

std::vector<double> spherical_function(const SpectralParams& sp, double lambda,
                                       int shells) {
  if (shells < 0) throw parameter_error("shells must be >= 0");
  std::vector<double> phi(shells + 1);
  phi[0] = 1.0;
  if (shells == 0) return phi;
  double g = gamma_eigenvalue(sp, lambda);
  phi[1] = g;
  double a = (sp.q + 1) * g, invq = 1.0 / sp.q;
  for (int n = 1; n < shells; ++n)
    phi[n + 1] = (a * phi[n] - phi[n - 1]) * invq;
  return phi;
}

std::vector<cxd> spherical_function(const SpectralParams& sp, cxd lambda,
                                    int shells) {
  if (shells < 0) throw parameter_error("shells must be >= 0");
  std::vector<cxd> phi(shells + 1);
  phi[0] = 1.0;
  if (shells == 0) return phi;
  cxd g = gamma_eigenvalue(sp, lambda);
  phi[1] = g;
  cxd a = (sp.q + 1.0) * g;
  double invq = 1.0 / sp.q;
  for (int n = 1; n < shells; ++n)
    phi[n + 1] = (a * phi[n] - phi[n - 1]) * invq;
  return phi;
}

}  // namespace treeharm

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treeharm/spectral.hpp"

using namespace treeharm;

TEST_CASE("eigenvalue family has the right constants and symmetries") {
  SpectralParams sp4(4);
  CHECK(sp4.gamma0 == doctest::Approx(0.8).epsilon(1e-15));   // 2/(2 + 1/2)
  CHECK(gamma_eigenvalue(sp4, 0.0) == doctest::Approx(0.8));
  for (int q : {2, 3, 5}) {
    SpectralParams sp(q);
    CHECK(sp.tau == doctest::Approx(2.0 * M_PI / std::log(double(q))));
    for (double lam : {0.1, 0.7, 1.9}) {
      CHECK(gamma_eigenvalue(sp, lam) ==
            doctest::Approx(gamma_eigenvalue(sp, -lam)).epsilon(1e-15));
      CHECK(gamma_eigenvalue(sp, lam + sp.tau) ==
            doctest::Approx(gamma_eigenvalue(sp, lam)).epsilon(1e-12));
      CHECK(std::abs(gamma_eigenvalue(sp, lam)) <= sp.gamma0);
    }
    // the complex extension restricts to the real family
    cxd g = gamma_eigenvalue(sp, cxd(0.4, 0.0));
    CHECK(std::abs(g - gamma_eigenvalue(sp, 0.4)) < 1e-15);
    // at lambda = -i/2 the eigenvalue is 1: the constant function
    cxd g1 = gamma_eigenvalue(sp, cxd(0.0, -0.5));
    CHECK(std::abs(g1 - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(SpectralParams(1), parameter_error);
}

TEST_CASE("spherical function values match hand computed entries") {
  SpectralParams sp(2);
  std::vector<double> phi = spherical_function(sp, 0.0, 3);
  CHECK(phi[0] == 1.0);
  CHECK(phi[1] == doctest::Approx(sp.gamma0).epsilon(1e-15));
  // phi(2) = (3 gamma0^2 - 1)/2 with gamma0^2 = 8/9
  CHECK(std::abs(phi[2] - 5.0 / 6.0) < 1e-14);
  // lambda = -i/2 gives the constant eigenfunction
  std::vector<cxd> one = spherical_function(sp, cxd(0.0, -0.5), 6);
  for (cxd v : one) CHECK(std::abs(v - 1.0) < 1e-13);
}

TEST_CASE("spherical function obeys the shell mean recurrence") {
  for (int q : {2, 3, 5}) {
    SpectralParams sp(q);
    for (double lam : {0.0, 0.3, 1.1, 0.5 * sp.tau}) {
      std::vector<double> phi = spherical_function(sp, lam, 12);
      std::vector<double> mphi = oracles::shell_mean(q, phi);
      double gamma = gamma_eigenvalue(sp, lam);
      for (int n = 0; n <= 10; ++n)   // last shell sees a truncated neighbour
        CHECK(std::abs(mphi[n] - gamma * phi[n]) < 1e-14);
    }
  }
}

TEST_CASE("spherical function stays inside the standard envelope") {
  // |phi_lambda(n)| <= (1+n) q^(-n/2) for real lambda
  for (int q : {2, 3, 4}) {
    SpectralParams sp(q);
    for (int j = 0; j <= 16; ++j) {
      double lam = j * sp.tau / 32.0;
      std::vector<double> phi = spherical_function(sp, lam, 40);
      for (int n = 0; n <= 40; ++n)
        CHECK(std::abs(phi[n]) * std::pow(double(q), 0.5 * n) <=
              (1.0 + n) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("c coefficients split the spherical function into plane waves") {
  // phi_lambda(n) = q^(-n/2) ( c(lambda) q^(i lambda n)
  //                          + c(-lambda) q^(-i lambda n) ) off the poles
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    for (double frac : {0.11, 0.23, 0.37, 0.49}) {
      double lam = frac * sp.tau;
      cxd cp = c_function(sp, lam);
      cxd cm = c_function(sp, -lam);
      std::vector<double> phi = spherical_function(sp, lam, 20);
      for (int n = 1; n <= 20; ++n) {
        cxd wave = cp * std::polar(1.0, lam * sp.log_q * n) +
                   cm * std::polar(1.0, -lam * sp.log_q * n);
        CHECK(std::abs(phi[n] * std::pow(double(q), 0.5 * n) - wave) < 1e-11);
      }
    }
  }
}

TEST_CASE("c function identity and poles") {
  SpectralParams sp(2);
  for (double frac : {0.05, 0.17, 0.31, 0.44}) {
    double lam = frac * sp.tau;
    CHECK(std::abs(c_function(sp, lam) + c_function(sp, -lam) - 1.0) < 1e-13);
  }
  CHECK_THROWS_AS(c_function(sp, cxd(0.0)), pole_error);
  CHECK_THROWS_AS(c_function(sp, cxd(0.5 * sp.tau)), pole_error);
  CHECK_THROWS_AS(c_function(sp, cxd(-0.5 * sp.tau)), pole_error);
}

TEST_CASE("spectral density is an even probability density") {
  for (int q : {2, 3, 5}) {
    SpectralParams sp(q);
    CHECK(plancherel_weight(sp, 0.0) == 0.0);
    CHECK(std::abs(plancherel_weight(sp, 0.5 * sp.tau)) < 1e-30);
    for (double lam : {0.1, 0.4, 1.2}) {
      CHECK(plancherel_weight(sp, lam) >= 0.0);
      CHECK(plancherel_weight(sp, lam) ==
            doctest::Approx(plancherel_weight(sp, -lam)).epsilon(1e-15));
    }
    double mass = oracles::simpson(
        [&](double lam) { return plancherel_weight(sp, lam); }, -0.5 * sp.tau,
        0.5 * sp.tau, 4096);
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }
}

TEST_CASE("density times squared c modulus is constant") {
  // w is proportional to 1/|c|^2; the product removes all lambda dependence
  SpectralParams sp(3);
  double ref = plancherel_weight(sp, 0.2) * std::norm(c_function(sp, 0.2));
  for (double lam : {0.05, 0.5, 0.9, 1.3}) {
    double v = plancherel_weight(sp, lam) * std::norm(c_function(sp, lam));
    CHECK(v == doctest::Approx(ref).epsilon(1e-12));
  }
}

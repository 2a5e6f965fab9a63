#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treeharm/experiment.hpp"
#include "treeharm/transforms.hpp"

using namespace treeharm;

TEST_CASE("uniform grid places nodes symmetrically with equal weights") {
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 16);
  CHECK(grid.size() == 16);
  CHECK(grid.node(0) == -0.5 * sp.tau);
  CHECK(grid.node(8) == 0.0);
  CHECK(grid.weight() == sp.tau / 16.0);
  QuadratureGrid half = grid.coarsened();
  CHECK(half.size() == 8);
  for (int j = 0; j < 8; ++j) CHECK(half.node(j) == grid.node(2 * j));
  CHECK_THROWS_AS(half.coarsened(), parameter_error);
  CHECK_THROWS_AS(QuadratureGrid(sp, 9), parameter_error);
  CHECK_THROWS_AS(QuadratureGrid(sp, 6), parameter_error);
}

TEST_CASE("trapezoid rule integrates tree plane waves exactly below aliasing") {
  SpectralParams sp(3);
  QuadratureGrid grid(sp, 16);
  auto mode_sum = [&](int n) {
    cxd s = 0.0;
    for (int j = 0; j < grid.size(); ++j)
      s += std::polar(1.0, n * grid.node(j) * sp.log_q);
    return grid.weight() * s;
  };
  CHECK(std::abs(mode_sum(0) - sp.tau) < 1e-14);
  for (int n = 1; n < 16; ++n) CHECK(std::abs(mode_sum(n)) < 1e-13);
  // the first aliased mode integrates like the constant again
  CHECK(std::abs(mode_sum(16) - sp.tau) < 1e-12);
}

TEST_CASE("gauss legendre rules integrate polynomials to full degree") {
  GaussRule rule = gauss_legendre(5);
  double w_sum = 0.0, x8 = 0.0, x9 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    w_sum += rule.weights[i];
    x8 += rule.weights[i] * std::pow(rule.nodes[i], 8);
    x9 += rule.weights[i] * std::pow(rule.nodes[i], 9);
  }
  CHECK(std::abs(w_sum - 2.0) < 1e-14);
  CHECK(std::abs(x8 - 2.0 / 9.0) < 1e-14);
  CHECK(std::abs(x9) < 1e-14);
  cxd s = integrate_panels([](double x) { return cxd(std::sin(x)); }, 0.0,
                           M_PI, 4, gauss_legendre(16));
  CHECK(std::abs(s - 2.0) < 1e-14);
}

TEST_CASE("point mass transforms to the constant function") {
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    QuadratureGrid grid(sp, 64);
    RadialFunction d(q, {cxd(1.0)});
    SpectralFunction F = spherical_transform(d, grid);
    for (int j = 0; j < grid.size(); ++j) CHECK(std::abs(F[j] - 1.0) < 1e-15);
  }
}

TEST_CASE("shell indicators transform to weighted eigenfunction values") {
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 64);
  std::vector<cxd> vals(3, cxd(0.0));
  vals[2] = 1.0;
  SpectralFunction F = spherical_transform(RadialFunction(2, vals), grid);
  for (int j = 0; j < grid.size(); ++j) {
    double phi2 = spherical_function(sp, grid.node(j), 2)[2];
    CHECK(std::abs(F[j] - shell_volume(2, 2) * phi2) < 1e-13);
  }
}

TEST_CASE("transform is an isometry on seeded radial data") {
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    QuadratureGrid grid(sp, 512);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RadialFunction f = seeded_radial(q, 8, seed);
      double side_tree = radial_l2_norm(f);
      double side_spec = spectral_l2_norm(spherical_transform(f, grid));
      CHECK(std::abs(side_tree - side_spec) < 1e-12 * side_tree);
    }
  }
}

TEST_CASE("spectral inversion returns the input within its budget") {
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    QuadratureGrid grid(sp, 512);
    for (int shell = 0; shell <= 8; ++shell) {
      std::vector<cxd> vals(shell + 1, cxd(0.0));
      vals[shell] = 1.0;
      RadialFunction f(q, vals);
      RadialWithBudget rt =
          inverse_spherical(spherical_transform(f, grid), 10);
      double err = 0.0;
      for (int n = 0; n <= 10; ++n) err = std::max(err, std::abs(rt.values(n) - f(n)));
      CHECK(err <= 1e-10);
      CHECK(err <= rt.budget + 1e-14);
    }
    RadialFunction f = seeded_radial(q, 8, 3);
    RadialWithBudget rt = inverse_spherical(spherical_transform(f, grid), 8);
    double err = 0.0;
    for (int n = 0; n <= 8; ++n) err = std::max(err, std::abs(rt.values(n) - f(n)));
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("horocycle inversion factors the spherical transform") {
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    QuadratureGrid grid(sp, 512);
    int cutoff = 60;
    for (int shell : {0, 3, 8}) {
      std::vector<cxd> vals(shell + 1, cxd(0.0));
      vals[shell] = 1.0;
      RadialFunction f(q, vals);
      SpectralFunction F = spherical_transform(f, grid);
      SequenceWithBudget seq = fourier_inverse(F, 10 + 2 * cutoff + 2);
      RadialWithBudget rt = abel_inverse(q, seq.values, 10, cutoff);
      double err = 0.0;
      for (int n = 0; n <= 10; ++n) err = std::max(err, std::abs(rt.values(n) - f(n)));
      CHECK(err <= 1e-9);
      CHECK(err <= seq.budget * 2.0 * (cutoff + 1) + rt.budget + 1e-13);
    }
  }
}

TEST_CASE("coarse grids are rejected with the needed size") {
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 16);
  SpectralFunction F =
      SpectralFunction::sample(grid, [](double) { return cxd(1.0); });
  try {
    inverse_spherical(F, 10);
    CHECK(false);
  } catch (const resolution_error& e) {
    CHECK(e.nodes == 16);
    CHECK(e.needed == 28);
  }
  CHECK_THROWS_AS(fourier_inverse(F, 5), resolution_error);
  CHECK_NOTHROW(inverse_spherical(F, 4));
}

TEST_CASE("abel series reports and enforces its discarded tail") {
  std::vector<cxd> g(20, cxd(1.0));
  RadialWithBudget r = abel_inverse(2, g, 4, 5);
  CHECK(r.budget == doctest::Approx(0.0625).epsilon(1e-12));
  try {
    abel_inverse(2, g, 4, 5, 1e-3);
    CHECK(false);
  } catch (const tolerance_error& e) {
    CHECK(e.requested == 1e-3);
    CHECK(e.achievable == doctest::Approx(0.0625));
  }
  CHECK_NOTHROW(abel_inverse(2, g, 4, 5, 0.1));
}

TEST_CASE("single fourier modes land on one index") {
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 64);
  SpectralFunction F = SpectralFunction::sample(grid, [&](double lam) {
    return std::polar(1.0, 3.0 * lam * sp.log_q);
  });
  SequenceWithBudget v = fourier_inverse(F, 6);
  for (int n = 0; n <= 6; ++n)
    CHECK(std::abs(v.values[n] - (n == 3 ? 1.0 : 0.0)) < 1e-13);
}

TEST_CASE("finer grids tighten the reported budget") {
  SpectralParams sp(2);
  auto kernel_budget = [&](int nodes) {
    QuadratureGrid grid(sp, nodes);
    SpectralFunction F = SpectralFunction::sample(grid, [&](double lam) {
      return cxd(std::exp(-(1.0 - gamma_eigenvalue(sp, lam))));
    });
    return inverse_spherical(F, 8).budget;
  };
  CHECK(kernel_budget(512) < 1e-10);
  CHECK(kernel_budget(512) <= kernel_budget(32));
}

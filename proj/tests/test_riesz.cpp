#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treeharm/experiment.hpp"
#include "treeharm/riesz.hpp"

using namespace treeharm;

TEST_CASE("summation parameters validate order and threshold") {
  CHECK_THROWS_AS(RieszParams(cxd(0.0, 1.0), 2.0), parameter_error);
  CHECK_THROWS_AS(RieszParams(cxd(-1.0, 0.0), 2.0), parameter_error);
  CHECK_THROWS_AS(RieszParams(cxd(1.0, 0.0), 0.0), parameter_error);
  CHECK_THROWS_AS(RieszParams(cxd(1.0, 0.0), -2.0), parameter_error);
  CHECK_NOTHROW(RieszParams(cxd(0.5, 3.0), 0.25));
}

TEST_CASE("multiplier stays in the unit disc and approaches one") {
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 64);
  for (cxd z : {cxd(1.0), cxd(2.0), cxd(0.5, 1.0), cxd(1.0, 3.0)}) {
    for (double R : {0.5, 2.0, 100.0}) {
      RieszParams rp(z, R);
      for (int j = 0; j < grid.size(); ++j)
        CHECK(std::abs(riesz_multiplier(sp, rp, grid.node(j))) <= 1.0 + 1e-15);
    }
  }
  // hand value at the spectral top for a real order
  double m0 = std::abs(riesz_multiplier(sp, RieszParams(cxd(2.0), 4.0), 0.0));
  double base = 1.0 - (1.0 - sp.gamma0) / 4.0;
  CHECK(m0 == doctest::Approx(base * base).epsilon(1e-14));
  // huge thresholds give back the identity
  CHECK(std::abs(riesz_multiplier(sp, RieszParams(cxd(1.0, 3.0), 1e8), 0.7) -
                 1.0) < 1e-6);
  // thresholds below the spectral gap kill the multiplier entirely
  RieszParams dead(cxd(2.0), 0.5 * (1.0 - sp.gamma0));
  for (int j = 0; j < grid.size(); ++j)
    CHECK(riesz_multiplier(sp, dead, grid.node(j)) == cxd(0.0));
}

TEST_CASE("order one kernels match the closed form") {
  // m = 1 - (1 - gamma)/R is affine in gamma for R >= 2, so the kernel is
  // (1 - 1/R) delta + (1/R) (neighbour average of delta): two shells only
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    QuadratureGrid grid(sp, 512);
    for (double R : {2.5, 8.0}) {
      for (const RadialWithBudget& route :
           {riesz_kernel_spectral(RieszParams(cxd(1.0), R), grid, 12),
            riesz_kernel_horocycle(RieszParams(cxd(1.0), R), grid, 12, 60)}) {
        CHECK(std::abs(route.values(0) - (1.0 - 1.0 / R)) < 1e-12);
        CHECK(std::abs(route.values(1) - 1.0 / (R * (q + 1))) < 1e-12);
        for (int n = 2; n <= 12; ++n) CHECK(std::abs(route.values(n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("kink panels agree with an independent quadrature") {
  // below threshold 2 the positive part cuts the integrand at an interior
  // point; integrate the cut interval with Simpson as the reference
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 512);
  RieszParams rp(cxd(2.0), 1.5);
  RadialWithBudget k = riesz_kernel_spectral(rp, grid, 10);
  double cut = std::acos((1.0 - rp.R) / sp.gamma0) / sp.log_q;
  for (int n = 0; n <= 10; ++n) {
    double ref = 2.0 * oracles::simpson(
                           [&](double lam) {
                             return riesz_multiplier(sp, rp, lam).real() *
                                    spherical_function(sp, lam, n)[n] *
                                    plancherel_weight(sp, lam);
                           },
                           0.0, cut, 20000);
    CHECK(std::abs(k.values(n) - ref) < 1e-9);
  }
}

TEST_CASE("kernel decay stays under the branching bound") {
  CHECK(decay_bound(2) == doctest::Approx(2.0));
  CHECK(decay_bound(3) == doctest::Approx(1.5));
  for (int q : {2, 3}) {
    SpectralParams sp(q);
    QuadratureGrid grid(sp, 512);
    for (cxd z : {cxd(1.0), cxd(2.0), cxd(0.5, 1.0), cxd(1.0, 3.0)}) {
      for (double R : {1.5, 2.0, 37.5, 1024.0}) {
        KernelReport rep = kernel_report(RieszParams(z, R), grid, 30, 60);
        for (double ratio : rep.decay_ratio)
          CHECK(ratio <= decay_bound(q) + 1e-8);
        CHECK(rep.route_discrepancy <= 1e-8);
        CHECK(rep.route_discrepancy <= rep.budget + 1e-10);
      }
    }
  }
}

TEST_CASE("operator application reduces to kernel values on the point mass") {
  TreeParams tp(2, 16);
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 512);
  RieszOperator op(RieszParams(cxd(2.0), 8.0), grid, 12);
  TreeFunction f = delta(tp, Vertex(2));
  TreeFunctionWithBudget out = op.apply(f, 4);
  for (int n = 0; n <= 4; ++n) {
    Vertex rep = sphere(tp, Vertex(2), n).front();
    CHECK(std::abs(out.values(rep) - op.kernel()(n)) < 1e-15);
  }
  CHECK(out.budget == doctest::Approx(op.budget_for(1.0)));
}

TEST_CASE("deviation from identity at order one is the reciprocal threshold") {
  TreeParams tp(2, 40);
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 512);
  TreeFunction f = delta(tp, Vertex(2));
  for (double R : {8.0, 1024.0}) {
    TreeFunctionWithBudget s =
        riesz_apply(RieszParams(cxd(1.0), R), f, grid, 30, 8);
    double dev = 0.0;
    for (const Vertex& v : ball_vertices(tp, 8))
      dev = std::max(dev, std::abs(s.values(v) - f(v)));
    CHECK(std::abs(dev - 1.0 / R) < 1e-12);
  }
}

TEST_CASE("maximal function is the envelope of single thresholds") {
  TreeParams tp(2, 38);
  SpectralParams sp(2);
  QuadratureGrid grid(sp, 512);
  TreeFunction f = seeded_function(tp, 3, 2);
  std::vector<double> rs = {2.0, 4.0, 8.0, 16.0};
  TreeFunctionWithBudget mx = maximal_apply(cxd(1.0), rs, f, grid, 30, 4);
  double worst_budget = 0.0;
  TreeFunction envelope(tp);
  for (double R : rs) {
    TreeFunctionWithBudget s =
        riesz_apply(RieszParams(cxd(1.0), R), f, grid, 30, 4);
    worst_budget = std::max(worst_budget, s.budget);
    for (const Vertex& v : ball_vertices(tp, 4))
      envelope.set(v, std::max(envelope(v).real(), std::abs(s.values(v))));
  }
  for (const Vertex& v : ball_vertices(tp, 4))
    CHECK(std::abs(mx.values(v) - envelope(v)) < 1e-14);
  CHECK(mx.budget == doctest::Approx(worst_budget));
}

TEST_CASE("comparison kernel norms have closed forms") {
  RadialFunction k2 = comparison_kernel(2, 30);
  for (int n = 0; n <= 30; ++n)
    CHECK(std::abs(k2(n) - std::pow(2.0, -0.5 * n)) < 1e-15);
  REQUIRE(k2.geometric_tail().has_value());
  CHECK(*k2.geometric_tail() == std::sqrt(0.5));
  LqNorm l4 = radial_lq_norm(k2, 4.0);
  CHECK(!l4.diverges);
  CHECK(std::abs(std::pow(l4.value, 4.0) - 2.5) < 1e-12);
  CHECK(radial_lq_norm(k2, 2.0).diverges);

  RadialFunction k3 = comparison_kernel(3, 30);
  CHECK(radial_lq_norm(k3, 2.0).diverges);
  LqNorm l4q3 = radial_lq_norm(k3, 4.0);
  CHECK(std::abs(std::pow(l4q3.value, 4.0) - 5.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(radial_lq_norm(k2, 0.5), parameter_error);
}

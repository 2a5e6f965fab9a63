#include "treeharm/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treeharm {

HeatParams::HeatParams(double time) : time(time) {
  if (!(time > 0.0)) throw parameter_error("heat time must be > 0");
}

HeatKernel heat_kernel(const HeatParams& hp, const QuadratureGrid& grid,
                       int shells) {
  SpectralParams sp(grid.q());
  auto m = SpectralFunction::sample(grid, [&](double lam) {
    return cxd(std::exp(-hp.time * (1.0 - gamma_eigenvalue(sp, lam))));
  });
  RadialWithBudget inv = inverse_spherical(m, shells);
  double mass = inv.values(0).real();
  double vol = sp.q + 1;
  for (int n = 1; n <= shells; ++n) {
    mass += vol * inv.values(n).real();
    vol *= sp.q;
  }
  double tail = std::max(0.0, 1.0 - mass);
  return {std::move(inv.values), inv.budget, tail};
}

TreeFunctionWithBudget heat_apply(const HeatParams& hp, const TreeFunction& f,
                                  const QuadratureGrid& grid, int shells,
                                  int eval_radius) {
  HeatKernel h = heat_kernel(hp, grid, shells);
  TreeFunction out = radial_convolve(f, h.values, eval_radius);
  double budget =
      h.quad_budget * lp_norm(f, 1.0) +
      h.tail_mass * lp_norm(f, std::numeric_limits<double>::infinity());
  return {std::move(out), budget};
}

SpectralNormCheck heat_l2_norm_check(const HeatParams& hp,
                                     const QuadratureGrid& grid) {
  SpectralParams sp(grid.q());
  double obs = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    obs = std::max(obs,
                   std::exp(-hp.time * (1.0 - gamma_eigenvalue(sp, grid.node(j)))));
  double expected = std::exp(-hp.time * (1.0 - sp.gamma0));
  return {obs, expected, std::abs(obs - expected), obs <= 1.0};
}

TreeFunctionWithBudget heat_maximal_apply(std::span<const double> times,
                                          const TreeFunction& f,
                                          const QuadratureGrid& grid,
                                          int shells, int eval_radius) {
  if (times.empty()) throw parameter_error("no times given");
  ConvolutionPlan plan(f, eval_radius, shells);
  double f_l1 = lp_norm(f, 1.0);
  double f_sup = lp_norm(f, std::numeric_limits<double>::infinity());
  TreeFunction best(f.params());
  double budget = 0.0;
  bool first = true;
  for (double t : times) {
    HeatKernel h = heat_kernel(HeatParams(t), grid, shells);
    TreeFunction val = plan.apply(h.values);
    budget = std::max(budget, h.quad_budget * f_l1 + h.tail_mass * f_sup);
    if (first) {
      for (const auto& [v, x] : val.entries()) best.set(v, std::abs(x));
      first = false;
    } else {
      for (const auto& [v, x] : val.entries())
        if (std::abs(x) > best(v).real()) best.set(v, std::abs(x));
    }
  }
  return {std::move(best), budget};
}

namespace {

cxd total_sum(const TreeFunction& f) {
  cxd s = 0.0;
  for (const auto& [v, val] : f.entries()) s += val;
  return s;
}

}  // namespace

SmoothingExperiment dense_subspace_experiment(
    const TreeFunction& f, std::span<const std::pair<double, double>> schedule,
    cxd z, std::span<const double> thresholds, const QuadratureGrid& grid,
    int shells, int inner_radius, int outer_radius) {
  if (schedule.empty()) throw parameter_error("empty smoothing schedule");
  SmoothingExperiment out;
  double ball = static_cast<double>(ball_size(f.params(), outer_radius));
  for (auto [s, t] : schedule) {
    if (!(s > 0.0 && t > 0.0))
      throw parameter_error("schedule entries must be positive");
    TreeFunctionWithBudget g1 =
        heat_apply(HeatParams(s), f, grid, shells, inner_radius);
    TreeFunctionWithBudget g =
        heat_apply(HeatParams(1.0 / t), g1.values, grid, shells, outer_radius);
    // mass lost to the two radius truncations; the smoothing itself
    // preserves the total sum
    double d1 = std::abs(total_sum(f) - total_sum(g1.values));
    double d_out = std::abs(total_sum(f) - total_sum(g.values));
    double pw = g.budget + g1.budget + d1;   // pointwise error of g
    TreeFunction diff = g.values;
    for (const auto& [v, val] : f.entries()) diff.set(v, diff(v) - val);
    SmoothingRow row;
    row.s = s;
    row.t = t;
    row.norm_l1 = lp_norm(diff, 1.0);
    row.norm_l2 = lp_norm(diff, 2.0);
    row.norm_sup = lp_norm(diff, std::numeric_limits<double>::infinity());
    row.budget_l1 = pw * ball + d_out;
    row.budget_l2 = pw * std::sqrt(ball) + d_out;
    row.budget_sup = pw + d_out;
    out.approx.push_back(row);

    if (!thresholds.empty()) {
      ConvolutionPlan plan(g.values, 0, shells);
      double g_l1 = lp_norm(g.values, 1.0);
      Vertex base(f.params().q);
      for (double R : thresholds) {
        RieszOperator op(RieszParams(z, R), grid, shells);
        TreeFunction val = plan.apply(op.kernel());
        double kappa_l1 = 0.0;
        for (int n = 0; n <= op.kernel().shells(); ++n)
          kappa_l1 += std::abs(op.kernel()(n)) * shell_volume(grid.q(), n);
        SmoothedPointRow prow;
        prow.s = s;
        prow.t = t;
        prow.threshold = R;
        prow.deviation = std::abs(val(base) - g.values(base));
        prow.budget = op.budget_for(g_l1) + (1.0 + kappa_l1) * pw;
        out.point.push_back(prow);
      }
    }
  }
  return out;
}

}  // namespace treeharm

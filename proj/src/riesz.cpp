#include "treeharm/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace treeharm {

RieszParams::RieszParams(cxd z, double R) : z(z), R(R) {
  if (!(z.real() > 0.0)) throw parameter_error("order needs Re z > 0");
  if (!(R > 0.0)) throw parameter_error("threshold R must be > 0");
}

cxd riesz_multiplier(const SpectralParams& sp, const RieszParams& rp,
                     double lambda) {
  double t = 1.0 - (1.0 - gamma_eigenvalue(sp, lambda)) / rp.R;
  if (t <= 0.0) return 0.0;
  return std::exp(rp.z * std::log(t));
}

namespace {

// half-open support of the multiplier in b = lambda * log q over [0, pi]:
// gamma0 cos b >= 1 - R
double support_end(const SpectralParams& sp, double R) {
  double c = (1.0 - R) / sp.gamma0;
  if (c >= 1.0) return 0.0;        // multiplier identically zero
  if (c <= -1.0) return std::numbers::pi;
  return std::acos(c);
}

constexpr int kPanels = 48;
constexpr int kRuleSize = 32;

// kappa(n) = 2 * integral over [0, lambda*] of m phi_n w, by Gauss-Legendre
// panels; used when the positive part truncates the multiplier (R < 2)
std::vector<cxd> panel_kernel(const RieszParams& rp, const SpectralParams& sp,
                              int shells, int panels, const GaussRule& rule) {
  std::vector<cxd> acc(shells + 1, cxd(0.0));
  double bstar = support_end(sp, rp.R);
  if (bstar == 0.0) return acc;
  double lstar = bstar / sp.log_q;
  double h = lstar / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double lam = mid + 0.5 * h * rule.nodes[i];
      cxd c = 2.0 * 0.5 * h * rule.weights[i] *
              riesz_multiplier(sp, rp, lam) * plancherel_weight(sp, lam);
      std::vector<double> phi = spherical_function(sp, lam, shells);
      for (int n = 0; n <= shells; ++n) acc[n] += c * phi[n];
    }
  }
  return acc;
}

// boundary sequence g(j) = (1/tau) integral of m q^(-i lambda j), panel route
std::vector<cxd> panel_boundary(const RieszParams& rp,
                                const SpectralParams& sp, int max_index,
                                int panels, const GaussRule& rule) {
  std::vector<cxd> acc(max_index + 1, cxd(0.0));
  double bstar = support_end(sp, rp.R);
  if (bstar == 0.0) return acc;
  double lstar = bstar / sp.log_q;
  double h = lstar / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      double lam = mid + 0.5 * h * rule.nodes[i];
      // even multiplier: the two half-intervals combine to a cosine
      cxd c = (2.0 / sp.tau) * 0.5 * h * rule.weights[i] *
              riesz_multiplier(sp, rp, lam);
      double b = lam * sp.log_q;
      for (int j = 0; j <= max_index; ++j) acc[j] += c * std::cos(j * b);
    }
  }
  return acc;
}

double max_abs_diff(std::span<const cxd> a, std::span<const cxd> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

RadialWithBudget riesz_kernel_spectral(const RieszParams& rp,
                                       const QuadratureGrid& grid,
                                       int shells) {
  SpectralParams sp(grid.q());
  if (rp.R >= 2.0) {
    // positive part inactive: 1 - (1-gamma)/R >= 1 - 2/R > 0, smooth and
    // periodic, so the uniform grid rule converges spectrally
    auto m = SpectralFunction::sample(
        grid, [&](double lam) { return riesz_multiplier(sp, rp, lam); });
    return inverse_spherical(m, shells);
  }
  GaussRule rule = gauss_legendre(kRuleSize);
  std::vector<cxd> fine = panel_kernel(rp, sp, shells, kPanels, rule);
  std::vector<cxd> coarse = panel_kernel(rp, sp, shells, kPanels / 2, rule);
  double budget = max_abs_diff(fine, coarse) +
                  64.0 * std::numeric_limits<double>::epsilon();
  return {RadialFunction(grid.q(), std::move(fine)), budget};
}

RadialWithBudget riesz_kernel_horocycle(const RieszParams& rp,
                                        const QuadratureGrid& grid, int shells,
                                        int series_cutoff) {
  SpectralParams sp(grid.q());
  int max_index = shells + 2 * series_cutoff + 2;
  std::vector<cxd> g;
  double g_budget = 0.0;
  if (rp.R >= 2.0) {
    auto m = SpectralFunction::sample(
        grid, [&](double lam) { return riesz_multiplier(sp, rp, lam); });
    SequenceWithBudget seq = fourier_inverse(m, max_index);
    g = std::move(seq.values);
    g_budget = seq.budget;
  } else {
    GaussRule rule = gauss_legendre(kRuleSize);
    g = panel_boundary(rp, sp, max_index, kPanels, rule);
    std::vector<cxd> coarse =
        panel_boundary(rp, sp, max_index, kPanels / 2, rule);
    g_budget = max_abs_diff(g, coarse) +
               64.0 * std::numeric_limits<double>::epsilon();
  }
  RadialWithBudget out = abel_inverse(grid.q(), g, shells, series_cutoff);
  // each output shell sums 2(K+1) entries of g, each weighted by at most 1
  out.budget += 2.0 * (series_cutoff + 1) * g_budget;
  return out;
}

double decay_bound(int q) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  return static_cast<double>(q) / (q - 1);
}

KernelReport kernel_report(const RieszParams& rp, const QuadratureGrid& grid,
                           int shells, int series_cutoff) {
  RadialWithBudget spec = riesz_kernel_spectral(rp, grid, shells);
  RadialWithBudget horo =
      riesz_kernel_horocycle(rp, grid, shells, series_cutoff);
  std::vector<double> ratio(shells + 1);
  double rq = std::sqrt(static_cast<double>(grid.q()));
  double scale = 1.0;
  for (int n = 0; n <= shells; ++n) {
    ratio[n] = scale * std::abs(spec.values(n));
    scale *= rq;
  }
  double disc = 0.0;
  for (int n = 0; n <= shells; ++n)
    disc = std::max(disc, std::abs(spec.values(n) - horo.values(n)));
  return {std::move(spec.values), std::move(horo.values), std::move(ratio),
          disc, spec.budget + horo.budget};
}

RieszOperator::RieszOperator(const RieszParams& rp, const QuadratureGrid& grid,
                             int shells)
    : params_(rp),
      kernel_(RadialFunction(grid.q(), {cxd(0.0)})),
      kernel_budget_(0.0) {
  RadialWithBudget k = riesz_kernel_spectral(rp, grid, shells);
  kernel_ = std::move(k.values);
  kernel_budget_ = k.budget;
}

namespace {

double apply_budget(int q, int shells, double kernel_budget, double f_l1) {
  // per-shell kernel error plus the decay tail beyond the last shell
  double tail = decay_bound(q) *
                std::pow(static_cast<double>(q), -0.5 * (shells + 1));
  return (kernel_budget + tail) * f_l1;
}

}  // namespace

TreeFunctionWithBudget RieszOperator::apply(const TreeFunction& f,
                                            int eval_radius) const {
  if (f.params().q != kernel_.q())
    throw parameter_error("branching number mismatch");
  TreeFunction out = radial_convolve(f, kernel_, eval_radius);
  return {std::move(out), budget_for(lp_norm(f, 1.0))};
}

TreeFunctionWithBudget RieszOperator::apply(const ConvolutionPlan& plan,
                                            double f_l1) const {
  return {plan.apply(kernel_), budget_for(f_l1)};
}

double RieszOperator::budget_for(double f_l1) const {
  return apply_budget(kernel_.q(), kernel_.shells(), kernel_budget_, f_l1);
}

TreeFunctionWithBudget riesz_apply(const RieszParams& rp,
                                   const TreeFunction& f,
                                   const QuadratureGrid& grid, int shells,
                                   int eval_radius) {
  return RieszOperator(rp, grid, shells).apply(f, eval_radius);
}

TreeFunctionWithBudget maximal_apply(cxd z, std::span<const double> thresholds,
                                     const TreeFunction& f,
                                     const QuadratureGrid& grid, int shells,
                                     int eval_radius) {
  if (thresholds.empty()) throw parameter_error("no thresholds given");
  ConvolutionPlan plan(f, eval_radius, shells);
  double f_l1 = lp_norm(f, 1.0);
  TreeFunction best(f.params());
  double budget = 0.0;
  bool first = true;
  for (double R : thresholds) {
    RieszOperator op(RieszParams(z, R), grid, shells);
    TreeFunction val = plan.apply(op.kernel());
    budget = std::max(budget, apply_budget(grid.q(), shells,
                                           op.kernel_budget(), f_l1));
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

RadialFunction comparison_kernel(int q, int shells) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  if (shells < 0) throw parameter_error("shells must be >= 0");
  double rq = std::sqrt(1.0 / q);
  std::vector<cxd> v(shells + 1);
  double x = 1.0;
  for (int n = 0; n <= shells; ++n) {
    v[n] = x;
    x *= rq;
  }
  return RadialFunction(q, std::move(v), rq);
}

LqNorm radial_lq_norm(const RadialFunction& k, double p) {
  if (std::isnan(p) || p < 1.0)
    throw parameter_error("norm exponent must be in [1, inf)");
  if (std::isinf(p)) {
    double m = 0.0;
    for (int n = 0; n <= k.shells(); ++n) m = std::max(m, std::abs(k(n)));
    return {m, false};
  }
  int q = k.q();
  double s = std::pow(std::abs(k(0)), p);
  double vol = q + 1;
  for (int n = 1; n <= k.shells(); ++n) {
    s += vol * std::pow(std::abs(k(n)), p);
    if (n < k.shells()) vol *= q;
  }
  if (k.geometric_tail() && std::abs(k(k.shells())) > 0.0) {
    // terms n = N+j contribute vol_(N+j) |k(N)|^p t^(pj); for N >= 1 the
    // volume ratio is exactly q per step, for N = 0 the first step carries
    // the extra factor (q+1)/q
    double rho = q * std::pow(*k.geometric_tail(), p);
    // the ratio is only known to roundoff, so a critical series whose exact
    // ratio is 1 must still be flagged
    if (rho >= 1.0 - 1e-12)
      return {std::numeric_limits<double>::infinity(), true};
    double head = (k.shells() == 0) ? (q + 1.0) / q : vol;
    s += head * std::pow(std::abs(k(k.shells())), p) * rho / (1.0 - rho);
  }
  return {std::pow(s, 1.0 / p), false};
}

}  // namespace treeharm

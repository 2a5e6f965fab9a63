#include "treeharm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "treeharm/heat.hpp"
#include "treeharm/quadrature.hpp"
#include "treeharm/riesz.hpp"
#include "treeharm/spectral.hpp"
#include "treeharm/transforms.hpp"

namespace treeharm {

TreeFunction seeded_function(const TreeParams& params, int radius,
                             std::uint64_t seed) {
  PortableRng rng(seed);
  TreeFunction f(params);
  for (const Vertex& v : ball_vertices(params, radius))
    f.set(v, cxd(rng.symmetric()));
  return f;
}

RadialFunction seeded_radial(int q, int shells, std::uint64_t seed) {
  PortableRng rng(seed);
  std::vector<cxd> vals(shells + 1);
  for (auto& v : vals) {
    double re = rng.symmetric();
    double im = rng.symmetric();
    v = cxd(re, im);
  }
  return RadialFunction(q, std::move(vals));
}

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::string fmt_e(double x) {
  char b[48];
  std::snprintf(b, sizeof b, "%.16e", x);
  return b;
}

std::string fmt_g(double x) {
  char b[48];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

std::string fmt_short(double x) {
  char b[48];
  std::snprintf(b, sizeof b, "%g", x);
  return b;
}

}  // namespace

void ExperimentConfig::validate() const {
  bool known = command == "verify" || command == "kernel" ||
               command == "converge" || command == "heat" ||
               command == "maximal";
  if (!known) throw parameter_error("unknown command '" + command + "'");
  if (q < 2) throw parameter_error("q must be >= 2");
  if (depth < 1) throw parameter_error("depth must be >= 1");
  if (nodes < 8 || nodes % 2 != 0)
    throw parameter_error("nodes must be even and >= 8");
  if (shells < 0) throw parameter_error("shells must be >= 0");
  if (shells > depth) throw parameter_error("shells must be <= depth");
  if (series_cutoff < 0) throw parameter_error("series-cutoff must be >= 0");
  if (!(z_re > 0.0)) throw parameter_error("z-re must be > 0");
  if (!std::isfinite(z_im)) throw parameter_error("z-im must be finite");
  if (!(r_min > 0.0)) throw parameter_error("r-min must be > 0");
  if (!(r_max >= r_min)) throw parameter_error("r-max must be >= r-min");
  if (r_steps < 1) throw parameter_error("r-steps must be >= 1");
  if (r_steps > 1 && r_max == r_min)
    throw parameter_error("r-steps > 1 needs r-max > r-min");
  if (!std::isnan(tolerance) && !(tolerance > 0.0))
    throw parameter_error("tolerance must be > 0");
}

std::string ExperimentConfig::canonical() const {
  std::string tol = std::isnan(tolerance) ? "default" : fmt_g(tolerance);
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "command=%s q=%d depth=%d nodes=%d series-cutoff=%d "
                "shells=%d z-re=%s z-im=%s r-min=%s r-max=%s r-steps=%d "
                "seed=%llu tolerance=%s",
                command.c_str(), q, depth, nodes, series_cutoff, shells,
                fmt_g(z_re).c_str(), fmt_g(z_im).c_str(), fmt_g(r_min).c_str(),
                fmt_g(r_max).c_str(), r_steps,
                static_cast<unsigned long long>(seed), tol.c_str());
  return buf;
}

std::vector<double> ExperimentConfig::r_grid() const {
  std::vector<double> rs;
  if (r_steps == 1) {
    rs.push_back(r_min);
    return rs;
  }
  double l2 = std::log2(r_max / r_min);
  bool dyadic = std::abs(l2 - std::round(l2)) < 1e-12 &&
                static_cast<int>(std::round(l2)) == r_steps - 1;
  if (dyadic) {
    double R = r_min;
    for (int i = 0; i < r_steps; ++i) {
      rs.push_back(R);
      R *= 2.0;
    }
  } else {
    double la = std::log(r_min), lb = std::log(r_max);
    for (int i = 0; i < r_steps; ++i)
      rs.push_back(std::exp(la + (lb - la) * i / (r_steps - 1)));
  }
  return rs;
}

namespace {

// ---------------------------------------------------------------- output --

class CsvFile {
 public:
  CsvFile(const ExperimentConfig& cfg, std::string columns)
      : head_("# config: " + cfg.canonical() + "\n"),
        cols_(std::move(columns)) {}

  void comment(const std::string& s) { comments_ += "# " + s + "\n"; }
  void row(const std::string& r) {
    rows_ += r;
    rows_ += '\n';
  }

  void write(const std::string& path) const {
    std::filesystem::path p(path);
    if (!p.parent_path().empty())
      std::filesystem::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      out << head_ << comments_ << cols_ << '\n' << rows_;
      if (!out) throw parameter_error("cannot write " + path);
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::string head_;
  std::string comments_;
  std::string cols_;
  std::string rows_;
};

// ----------------------------------------------------------- common bits --

double sup_diff(const TreeFunction& a, const TreeFunction& b) {
  TreeFunction d = a;
  for (const auto& [v, val] : b.entries()) d.set(v, d(v) - val);
  return lp_norm(d, kInf);
}

cxd total_sum(const TreeFunction& f) {
  cxd s = 0.0;
  for (const auto& [v, val] : f.entries()) s += val;
  return s;
}

// largest horocycle series cutoff whose boundary sequence still fits the
// grid resolution rule
int fit_cutoff(int requested, int shells, int nodes) {
  int max_index = (nodes - 8) / 2;
  int k = (max_index - shells - 2) / 2;
  if (k < 0)
    throw resolution_error("grid too coarse for the horocycle route", nodes,
                           2 * (shells + 2) + 8);
  return std::min(requested, k);
}

void require_small_ball(const TreeParams& tp, int radius,
                        std::uint64_t cap = 2000000) {
  bool ok;
  try {
    ok = ball_size(tp, radius) <= cap;
  } catch (const parameter_error&) {
    ok = false;   // does not even fit in 64 bits
  }
  if (!ok)
    throw parameter_error("evaluation ball of radius " +
                          std::to_string(radius) +
                          " is too large; reduce depth - shells");
}

// ---------------------------------------------------------------- verify --

class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}

  double eff(double fallback) const {
    return std::isnan(tol_) ? fallback : tol_;
  }

  void add(const std::string& name, double observed, double bound) {
    bool pass = observed <= bound;
    results_.push_back({name, observed, bound, pass});
    std::printf("[%s] %-26s observed %.3e  bound %.3e\n",
                pass ? " ok " : "FAIL", name.c_str(), observed, bound);
  }

  const std::vector<CheckResult>& results() const { return results_; }

  bool all_pass() const {
    for (const auto& r : results_)
      if (!r.pass) return false;
    return true;
  }

 private:
  double tol_;
  std::vector<CheckResult> results_;
};

// e^(-t (I-M)) applied to the point mass, shell by shell, through the
// exponential power series; independent of the spectral machinery
std::vector<double> heat_series_shells(int q, double t, int shells,
                                       double tail_tol) {
  int kmax = 0;
  {
    double term = std::exp(-t), cum = term;
    while (1.0 - cum > tail_tol && kmax < 4000) {
      ++kmax;
      term *= t / kmax;
      cum += term;
    }
  }
  int len = shells + kmax + 2;
  std::vector<double> u(len, 0.0), v(len, 0.0), acc(len, 0.0);
  u[0] = 1.0;
  double coeff = std::exp(-t);
  for (int n = 0; n < len; ++n) acc[n] += coeff * u[n];
  for (int k = 1; k <= kmax; ++k) {
    v[0] = u[1];
    for (int n = 1; n < len; ++n) {
      double up = (n + 1 < len) ? u[n + 1] : 0.0;
      v[n] = (u[n - 1] + q * up) / (q + 1);
    }
    std::swap(u, v);
    coeff *= t / k;
    for (int n = 0; n < len; ++n) acc[n] += coeff * u[n];
  }
  acc.resize(shells + 1);
  return acc;
}

int cmd_verify(const ExperimentConfig& cfg) {
  Checker ck(cfg.tolerance);
  SpectralParams sp(cfg.q);
  QuadratureGrid grid(sp, cfg.nodes);
  cxd z(cfg.z_re, cfg.z_im);
  const cxd iu(0.0, 1.0);

  {  // sphere cardinalities against the closed form
    TreeParams tp(cfg.q, 5);
    Vertex base(cfg.q);
    double worst = 0.0;
    for (int n = 0; n <= 5; ++n)
      worst = std::max(worst,
                       std::abs(static_cast<double>(sphere(tp, base, n).size()) -
                                static_cast<double>(sphere_size(tp, n))));
    Vertex x = base.child(1).child(0);
    for (int n = 0; n <= 3; ++n)
      worst = std::max(worst,
                       std::abs(static_cast<double>(sphere(tp, x, n).size()) -
                                static_cast<double>(sphere_size(tp, n))));
    ck.add("sphere_counts", worst, 0.5);
  }

  {  // metric axioms on a small ball
    TreeParams tp(cfg.q, 3);
    auto verts = ball_vertices(tp, 3);
    int m = static_cast<int>(verts.size());
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int dij = distance(verts[i], verts[j]);
        if (dij != distance(verts[j], verts[i])) worst = std::max(worst, 1.0);
        if ((dij == 0) != (i == j)) worst = std::max(worst, 1.0);
      }
    PortableRng rng(cfg.seed);
    for (int trial = 0; trial < 20000; ++trial) {
      const Vertex& a = verts[rng.bits() % m];
      const Vertex& b = verts[rng.bits() % m];
      const Vertex& c = verts[rng.bits() % m];
      double viol = distance(a, c) - distance(a, b) - distance(b, c);
      worst = std::max(worst, viol);
    }
    ck.add("distance_metric", worst, 0.5);
  }

  {  // neighbour average: preserves mass, contracts the sup norm
    TreeParams tp(cfg.q, 6);
    TreeFunction f = seeded_function(tp, 3, cfg.seed + 1);
    TreeFunction mf = mean_apply(f);
    double mass_dev = std::abs(total_sum(mf) - total_sum(f));
    ck.add("mean_mass", mass_dev, 1e-13);
    ck.add("mean_sup_contraction", lp_norm(mf, kInf) - lp_norm(f, kInf),
           1e-15);
  }

  {  // dense and sparse mean sweeps agree
    TreeParams tp(cfg.q, 5);
    Ball ball(cfg.q, 5);
    TreeFunction f = seeded_function(tp, 4, cfg.seed + 2);
    std::vector<double> in(ball.size(), 0.0), out(ball.interior_size());
    for (const auto& [v, val] : f.entries())
      in[ball.index_of(v)] = val.real();
    ball.mean_interior(in, out);
    TreeFunction mf = mean_apply(f);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < ball.interior_size(); ++i)
      worst = std::max(worst,
                       std::abs(out[i] - mf(ball.vertex_at(i)).real()));
    ck.add("mean_dense_sparse", worst, 1e-15);
  }

  {  // radial eigenfunctions of the dense operator
    int d = 8;
    while (d > 2 && ball_size(TreeParams(cfg.q, d), d) > 2000000) --d;
    Ball ball(cfg.q, d);
    std::vector<double> in(ball.size()), out(ball.interior_size());
    double worst = 0.0;
    for (int k = 0; k <= 8; ++k) {
      double lam = k * sp.tau / 16.0;
      auto phi = spherical_function(sp, lam, d);
      double g = gamma_eigenvalue(sp, lam);
      for (int l = 0; l <= d; ++l)
        std::fill(in.begin() + ball.level_offset(l),
                  in.begin() + ball.level_offset(l + 1), phi[l]);
      ball.mean_interior(in, out);
      for (int l = 0; l < d; ++l)
        for (std::uint64_t i = ball.level_offset(l);
             i < ball.level_offset(l + 1); ++i)
          worst = std::max(worst, std::abs(out[i] - g * phi[l]));
    }
    ck.add("eigenfunction_identity", worst, ck.eff(1e-12));
  }

  {  // recurrence is tau-periodic and bounded by 1 on the real line
    auto a = spherical_function(sp, 0.37, 40);
    auto b = spherical_function(sp, 0.37 + sp.tau, 40);
    double worst = 0.0;
    for (int n = 0; n <= 40; ++n)
      worst = std::max(worst, std::abs(a[n] - b[n]));
    ck.add("recurrence_periodicity", worst, 1e-13);
    double bworst = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      auto phi = spherical_function(sp, grid.node(j), 40);
      for (double p : phi) bworst = std::max(bworst, std::abs(p) - 1.0);
    }
    ck.add("eigenfunction_bound", bworst, 1e-12);
  }

  {  // c(lambda) + c(-lambda) = 1 away from the poles
    double worst = 0.0;
    for (int k = 0; k < 101; ++k) {
      double lam = -0.5 * sp.tau + (k + 0.37) * sp.tau / 102.0;
      worst = std::max(worst, std::abs(c_function(sp, lam) +
                                       c_function(sp, -lam) - 1.0));
    }
    ck.add("c_identity", worst, ck.eff(1e-12));
  }

  {  // density is proportional to 1/|c|^2 and integrates to 1
    double r0 = 0.0, worst = 0.0;
    for (int k = 0; k < 101; ++k) {
      double lam = -0.5 * sp.tau + (k + 0.37) * sp.tau / 102.0;
      double r = plancherel_weight(sp, lam) * std::norm(c_function(sp, lam));
      if (k == 0)
        r0 = r;
      else
        worst = std::max(worst, std::abs(r - r0));
    }
    ck.add("density_vs_c", worst, 1e-12);
    double mass = 0.0;
    for (int j = 0; j < grid.size(); ++j)
      mass += grid.weight() * plancherel_weight(sp, grid.node(j));
    ck.add("density_mass", std::abs(mass - 1.0), ck.eff(1e-10));
  }

  {  // the grid annihilates q^(i lambda n) for 1 <= n << grid size
    double worst = 0.0;
    for (int n = 1; n <= 12; ++n) {
      cxd s = 0.0;
      for (int j = 0; j < grid.size(); ++j)
        s += grid.weight() * std::exp(iu * (sp.log_q * n * grid.node(j)));
      worst = std::max(worst, std::abs(s));
    }
    cxd s0 = 0.0;
    for (int j = 0; j < grid.size(); ++j) s0 += grid.weight();
    worst = std::max(worst, std::abs(s0 - sp.tau) / sp.tau);
    ck.add("quadrature_exactness", worst, 1e-12);
  }

  {  // transform is an isometry onto the density-weighted L^2
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      RadialFunction f = seeded_radial(cfg.q, 8, cfg.seed + 10 + t);
      SpectralFunction F = spherical_transform(f, grid);
      double a = radial_l2_norm(f), b = spectral_l2_norm(F);
      worst = std::max(worst, std::abs(a - b) / a);
    }
    ck.add("plancherel_isometry", worst, ck.eff(1e-10));
  }

  {  // inversion, both routes, on shell indicators
    int cutoff = fit_cutoff(cfg.series_cutoff, 8, cfg.nodes);
    double w1 = 0.0, w2 = 0.0;
    for (int n0 = 0; n0 <= 8; ++n0) {
      std::vector<cxd> v(n0 + 1, cxd(0.0));
      v[n0] = 1.0;
      RadialFunction f(cfg.q, std::move(v));
      SpectralFunction F = spherical_transform(f, grid);
      RadialWithBudget back = inverse_spherical(F, 8);
      for (int n = 0; n <= 8; ++n)
        w1 = std::max(w1, std::abs(back.values(n) - f(n)));
      SequenceWithBudget seq = fourier_inverse(F, 8 + 2 * cutoff + 2);
      RadialWithBudget back2 = abel_inverse(cfg.q, seq.values, 8, cutoff);
      for (int n = 0; n <= 8; ++n)
        w2 = std::max(w2, std::abs(back2.values(n) - f(n)));
    }
    ck.add("roundtrip_spectral", w1, ck.eff(1e-10));
    ck.add("roundtrip_horocycle", w2, ck.eff(1e-9));
  }

  {  // multiplier never leaves the unit disc
    double worst = -1.0;
    for (double R : cfg.r_grid())
      for (int j = 0; j < grid.size(); ++j)
        worst = std::max(
            worst,
            std::abs(riesz_multiplier(sp, RieszParams(z, R), grid.node(j))) -
                1.0);
    ck.add("multiplier_bound", worst, 1e-15);
  }

  {  // kernel: route agreement and normalised decay
    int cutoff = fit_cutoff(cfg.series_cutoff, cfg.shells, cfg.nodes);
    double disc = 0.0, ratio = 0.0;
    for (double R : {2.0, 16.0}) {
      KernelReport rep =
          kernel_report(RieszParams(z, R), grid, cfg.shells, cutoff);
      disc = std::max(disc, rep.route_discrepancy);
      ratio = std::max(ratio, *std::max_element(rep.decay_ratio.begin(),
                                                rep.decay_ratio.end()));
    }
    ck.add("kernel_route_agreement", disc, ck.eff(1e-8));
    ck.add("kernel_decay", ratio, decay_bound(cfg.q) + 1e-8);
  }

  {  // order-1 kernel in closed form
    RadialWithBudget k =
        riesz_kernel_spectral(RieszParams(cxd(1.0), 8.0), grid, cfg.shells);
    double worst = std::abs(k.values(0) - cxd(1.0 - 1.0 / 8.0));
    worst = std::max(worst,
                     std::abs(k.values(1) - cxd(1.0 / (8.0 * (cfg.q + 1)))));
    for (int n = 2; n <= cfg.shells; ++n)
      worst = std::max(worst, std::abs(k.values(n)));
    ck.add("order1_kernel_algebra", worst, ck.eff(1e-12));
  }

  {  // summation approaches the identity on the point mass
    TreeParams tp(cfg.q, cfg.depth);
    TreeFunction f = delta(tp, Vertex(cfg.q));
    int eval = std::min(4, cfg.depth - cfg.shells);
    ConvolutionPlan plan(f, eval, cfg.shells);
    double dev[2];
    double thresholds[2] = {4.0, 64.0};
    for (int i = 0; i < 2; ++i) {
      RieszOperator op(RieszParams(z, thresholds[i]), grid, cfg.shells);
      dev[i] = sup_diff(op.apply(plan, 1.0).values, f);
    }
    ck.add("riesz_identity_approach", dev[1] / dev[0], 1.0);
  }

  {  // heat kernel: mass, sign, realness, spectral norm
    HeatKernel h = heat_kernel(HeatParams(1.0), grid, cfg.shells);
    // shell n has volume ~ q^n while the kernel values carry an absolute
    // roundoff floor ~ q^(-n/2) eps, so summing past q^(n/2) ~ 2^20 only
    // accumulates amplified noise; the true mass beyond that radius is
    // below 1e-14 at t = 1 by the exponential series tail
    int n_mass = std::min(
        cfg.shells,
        static_cast<int>(40.0 / std::log2(static_cast<double>(cfg.q))));
    double mass = h.values(0).real();
    double vol = cfg.q + 1;
    double neg = 0.0, imag = 0.0;
    for (int n = 1; n <= n_mass; ++n) {
      mass += vol * h.values(n).real();
      vol *= cfg.q;
    }
    for (int n = 0; n <= cfg.shells; ++n) {
      neg = std::max(neg, -h.values(n).real());
      imag = std::max(imag, std::abs(h.values(n).imag()));
    }
    ck.add("heat_mass", std::abs(mass - 1.0), ck.eff(1e-8));
    ck.add("heat_positivity", neg, 1e-12);
    ck.add("heat_realness", imag, 1e-14);
    SpectralNormCheck nc = heat_l2_norm_check(HeatParams(1.0), grid);
    ck.add("heat_spectral_norm", nc.deviation + (nc.contraction ? 0.0 : 1.0),
           1e-14);
  }

  {  // semigroup law e^(-0.3 L) e^(-0.7 L) = e^(-L)
    TreeParams tp(cfg.q, cfg.depth);
    TreeFunction f = delta(tp, Vertex(cfg.q));
    int inner = std::min(8, cfg.depth - cfg.shells);
    int outer = std::min(4, inner);
    TreeFunctionWithBudget s1 =
        heat_apply(HeatParams(0.3), f, grid, cfg.shells, inner);
    TreeFunctionWithBudget s2 =
        heat_apply(HeatParams(0.7), s1.values, grid, cfg.shells, outer);
    TreeFunctionWithBudget direct =
        heat_apply(HeatParams(1.0), f, grid, cfg.shells, outer);
    ck.add("heat_semigroup", sup_diff(s2.values, direct.values),
           ck.eff(1e-9));
  }

  {  // spectral heat kernel vs the exponential power series
    auto series = heat_series_shells(cfg.q, 0.8, 12, 1e-13);
    HeatKernel h = heat_kernel(HeatParams(0.8), grid, std::max(cfg.shells, 12));
    double worst = 0.0;
    for (int n = 0; n <= 12; ++n)
      worst = std::max(worst, std::abs(h.values(n) - series[n]));
    ck.add("heat_series_oracle", worst, ck.eff(1e-9));
  }

  {  // heat and summation operators commute
    TreeParams tp(cfg.q, cfg.depth);
    TreeFunction f = delta(tp, Vertex(cfg.q));
    int inner = std::min(8, cfg.depth - cfg.shells);
    int outer = std::min(4, inner);
    RieszParams rp(z, 4.0);
    TreeFunctionWithBudget hf =
        heat_apply(HeatParams(0.2), f, grid, cfg.shells, inner);
    TreeFunctionWithBudget a =
        riesz_apply(rp, hf.values, grid, cfg.shells, outer);
    TreeFunctionWithBudget sf = riesz_apply(rp, f, grid, cfg.shells, inner);
    TreeFunctionWithBudget b =
        heat_apply(HeatParams(0.2), sf.values, grid, cfg.shells, outer);
    ck.add("heat_riesz_commute", sup_diff(a.values, b.values), ck.eff(1e-9));
  }

  {  // maximal operator dominated by the comparison convolution
    TreeParams tp(cfg.q, cfg.depth);
    TreeFunction f = seeded_function(tp, 3, cfg.seed + 3);
    int eval = std::min(4, cfg.depth - cfg.shells);
    std::vector<double> rs = cfg.r_grid();
    TreeFunctionWithBudget mx =
        maximal_apply(z, rs, f, grid, cfg.shells, eval);
    TreeFunction absf(tp);
    for (const auto& [v, val] : f.entries()) absf.set(v, std::abs(val));
    RadialFunction cmp = comparison_kernel(cfg.q, eval + f.support_radius());
    TreeFunction rhs = radial_convolve(absf, cmp, eval);
    double c = decay_bound(cfg.q);
    double ratio = 0.0;
    for (const auto& [v, val] : mx.values.entries()) {
      double r = c * rhs(v).real();
      if (r > 1e-300) ratio = std::max(ratio, val.real() / r);
    }
    ck.add("maximal_domination", ratio, 1.0);
    std::vector<double> half;
    for (std::size_t i = 0; i < rs.size(); i += 2) half.push_back(rs[i]);
    TreeFunctionWithBudget mh =
        maximal_apply(z, half, f, grid, cfg.shells, eval);
    double grow = 0.0;
    for (const auto& [v, val] : mh.values.entries())
      grow = std::max(grow, val.real() - mx.values(v).real());
    ck.add("maximal_refinement", grow, 1e-15);
  }

  {  // comparison kernel norms: finite at p=4, divergent at p=2
    RadialFunction cmp = comparison_kernel(cfg.q, 40);
    LqNorm l4 = radial_lq_norm(cmp, 4.0);
    double expect = 1.0 + (cfg.q + 1.0) / (cfg.q * (cfg.q - 1.0));
    double obs = std::abs(std::pow(l4.value, 4.0) - expect) +
                 (l4.diverges ? 1.0 : 0.0);
    ck.add("comparison_l4", obs, ck.eff(1e-12));
    LqNorm l2 = radial_lq_norm(cmp, 2.0);
    ck.add("comparison_l2_divergence", l2.diverges ? 0.0 : 1.0, 0.5);
  }

  int npass = 0;
  for (const auto& r : ck.results())
    if (r.pass) ++npass;
  std::printf("verify: %d/%zu checks passed\n", npass, ck.results().size());

  if (!cfg.output.empty()) {
    CsvFile csv(cfg, "check,observed,bound,pass");
    for (const auto& r : ck.results())
      csv.row(r.name + "," + fmt_e(r.observed) + "," + fmt_e(r.bound) + "," +
              (r.pass ? "1" : "0"));
    csv.write(cfg.output + "_verify.csv");
  }
  return ck.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------- kernel --

int cmd_kernel(const ExperimentConfig& cfg) {
  SpectralParams sp(cfg.q);
  QuadratureGrid grid(sp, cfg.nodes);
  cxd z(cfg.z_re, cfg.z_im);
  double slack = std::isnan(cfg.tolerance) ? 1e-8 : cfg.tolerance;
  double bound = decay_bound(cfg.q);
  bool ok = true;
  for (double R : cfg.r_grid()) {
    KernelReport rep = kernel_report(RieszParams(z, R), grid, cfg.shells,
                                     cfg.series_cutoff);
    double mr =
        *std::max_element(rep.decay_ratio.begin(), rep.decay_ratio.end());
    bool pass = mr <= bound + slack && rep.route_discrepancy <= slack;
    ok = ok && pass;
    std::printf("[%s] R=%-9s max q^(n/2)|kappa| %.8f  bound %.8f  routes %.3e\n",
                pass ? " ok " : "FAIL", fmt_short(R).c_str(), mr, bound,
                rep.route_discrepancy);
    if (!cfg.output.empty()) {
      CsvFile csv(cfg, "n,kappa_re,kappa_im,decay_ratio,route_diff");
      csv.comment("budget: " + fmt_e(rep.budget));
      for (int n = 0; n <= cfg.shells; ++n) {
        cxd k = rep.spectral_route(n);
        double rd = std::abs(rep.spectral_route(n) - rep.horocycle_route(n));
        csv.row(std::to_string(n) + "," + fmt_e(k.real()) + "," +
                fmt_e(k.imag()) + "," + fmt_e(rep.decay_ratio[n]) + "," +
                fmt_e(rd));
      }
      csv.write(cfg.output + "_R" + fmt_short(R) + ".csv");
    }
  }
  return ok ? 0 : 1;
}

// -------------------------------------------------------------- converge --

int cmd_converge(const ExperimentConfig& cfg) {
  TreeParams tp(cfg.q, cfg.depth);
  SpectralParams sp(cfg.q);
  QuadratureGrid grid(sp, cfg.nodes);
  cxd z(cfg.z_re, cfg.z_im);
  int eval = cfg.depth - cfg.shells;
  require_small_ball(tp, eval);
  double tol = std::isnan(cfg.tolerance) ? 1e-2 : cfg.tolerance;
  std::vector<double> rs = cfg.r_grid();
  bool gate = true;
  for (int kind = 0; kind < 2; ++kind) {
    TreeFunction f = kind == 0
                         ? delta(tp, Vertex(cfg.q))
                         : seeded_function(tp, std::min(4, eval), cfg.seed);
    ConvolutionPlan plan(f, eval, cfg.shells);
    double l1 = lp_norm(f, 1.0);
    CsvFile csv(cfg, "R,x_shell,deviation,error_budget");
    std::vector<double> overall;
    for (double R : rs) {
      RieszOperator op(RieszParams(z, R), grid, cfg.shells);
      TreeFunctionWithBudget applied = op.apply(plan, l1);
      TreeFunction diff = applied.values;
      for (const auto& [v, val] : f.entries()) diff.set(v, diff(v) - val);
      std::vector<double> per_shell(eval + 1, 0.0);
      for (const auto& [v, d] : diff.entries())
        per_shell[v.length()] = std::max(per_shell[v.length()], std::abs(d));
      for (int s = 0; s <= eval; ++s)
        csv.row(fmt_e(R) + "," + std::to_string(s) + "," +
                fmt_e(per_shell[s]) + "," + fmt_e(applied.budget));
      overall.push_back(
          *std::max_element(per_shell.begin(), per_shell.end()));
    }
    const char* label = kind == 0 ? "delta" : "random";
    for (std::size_t i = 0; i < rs.size(); ++i)
      std::printf("  %-6s R=%-9s max|S_R f - f| %.6e\n", label,
                  fmt_short(rs[i]).c_str(), overall[i]);
    if (kind == 0) {
      bool mono = true;
      for (std::size_t i = 3; i < overall.size(); ++i)
        if (!(overall[i] < overall[i - 1])) mono = false;
      bool small = overall.empty() ? false : overall.back() <= tol;
      std::printf("[%s] delta deviations decreasing, final %.3e <= %.3e\n",
                  mono && small ? " ok " : "FAIL",
                  overall.empty() ? 0.0 : overall.back(), tol);
      gate = mono && small;
    }
    if (!cfg.output.empty())
      csv.write(cfg.output + (kind == 0 ? "_delta.csv" : "_random.csv"));
  }
  return gate ? 0 : 1;
}

// ------------------------------------------------------------------ heat --

int cmd_heat(const ExperimentConfig& cfg) {
  TreeParams tp(cfg.q, cfg.depth);
  SpectralParams sp(cfg.q);
  QuadratureGrid grid(sp, cfg.nodes);
  cxd z(cfg.z_re, cfg.z_im);
  int eval = cfg.depth - cfg.shells;
  require_small_ball(tp, eval);
  std::vector<std::pair<double, double>> schedule = {
      {1.0, 1.0}, {0.1, 10.0}, {0.01, 100.0}, {0.001, 1000.0}};
  TreeFunction f = delta(tp, Vertex(cfg.q));
  SmoothingExperiment res = dense_subspace_experiment(
      f, schedule, z, cfg.r_grid(), grid, cfg.shells, eval, eval);

  CsvFile approx(cfg, "s,t,p,deviation,budget");
  for (const auto& r : res.approx) {
    approx.row(fmt_e(r.s) + "," + fmt_e(r.t) + ",1," + fmt_e(r.norm_l1) +
               "," + fmt_e(r.budget_l1));
    approx.row(fmt_e(r.s) + "," + fmt_e(r.t) + ",2," + fmt_e(r.norm_l2) +
               "," + fmt_e(r.budget_l2));
    approx.row(fmt_e(r.s) + "," + fmt_e(r.t) + ",inf," + fmt_e(r.norm_sup) +
               "," + fmt_e(r.budget_sup));
    std::printf(
        "  s=%-8s 1/t=%-8s ||g-f||_1 %.6e  ||g-f||_2 %.6e  sup %.6e\n",
        fmt_short(r.s).c_str(), fmt_short(1.0 / r.t).c_str(), r.norm_l1,
        r.norm_l2, r.norm_sup);
  }
  bool gate = true;
  for (std::size_t i = 1; i < res.approx.size(); ++i) {
    const auto& a = res.approx[i - 1];
    const auto& b = res.approx[i];
    if (!(b.norm_l1 < a.norm_l1 && b.norm_l2 < a.norm_l2 &&
          b.norm_sup < a.norm_sup))
      gate = false;
  }
  std::printf("[%s] smoothing distances strictly decreasing\n",
              gate ? " ok " : "FAIL");

  CsvFile point(cfg, "s,t,R,deviation,budget");
  for (const auto& r : res.point)
    point.row(fmt_e(r.s) + "," + fmt_e(r.t) + "," + fmt_e(r.threshold) +
              "," + fmt_e(r.deviation) + "," + fmt_e(r.budget));

  std::vector<double> times;
  for (const auto& [s, t] : schedule) times.push_back(s + 1.0 / t);
  std::sort(times.begin(), times.end());
  TreeFunctionWithBudget hm =
      heat_maximal_apply(times, f, grid, cfg.shells, eval);
  CsvFile hmax(cfg, "x_shell,maximal_value,budget");
  {
    std::vector<double> per_shell(eval + 1, 0.0);
    for (const auto& [v, val] : hm.values.entries())
      per_shell[v.length()] =
          std::max(per_shell[v.length()], val.real());
    for (int s = 0; s <= eval; ++s)
      hmax.row(std::to_string(s) + "," + fmt_e(per_shell[s]) + "," +
               fmt_e(hm.budget));
  }

  if (!cfg.output.empty()) {
    approx.write(cfg.output + "_approx.csv");
    point.write(cfg.output + "_riesz.csv");
    hmax.write(cfg.output + "_heatmax.csv");
  }
  return gate ? 0 : 1;
}

// --------------------------------------------------------------- maximal --

int cmd_maximal(const ExperimentConfig& cfg) {
  TreeParams tp(cfg.q, cfg.depth);
  SpectralParams sp(cfg.q);
  QuadratureGrid grid(sp, cfg.nodes);
  cxd z(cfg.z_re, cfg.z_im);
  int eval = cfg.depth - cfg.shells;
  require_small_ball(tp, eval);
  std::vector<double> rs = cfg.r_grid();
  double c = decay_bound(cfg.q);
  bool ok = true;
  CsvFile csv(cfg, "f,x_shell,maximal,domination,ratio");
  for (int kind = 0; kind < 2; ++kind) {
    const char* label = kind == 0 ? "delta" : "random";
    TreeFunction f = kind == 0
                         ? delta(tp, Vertex(cfg.q))
                         : seeded_function(tp, std::min(4, eval), cfg.seed);
    TreeFunctionWithBudget mx =
        maximal_apply(z, rs, f, grid, cfg.shells, eval);
    TreeFunction absf(tp);
    for (const auto& [v, val] : f.entries()) absf.set(v, std::abs(val));
    RadialFunction cmp = comparison_kernel(cfg.q, eval + f.support_radius());
    TreeFunction rhs = radial_convolve(absf, cmp, eval);
    std::vector<double> smax(eval + 1, 0.0), sdom(eval + 1, 0.0),
        sratio(eval + 1, 0.0);
    bool dominated = true;
    for (const auto& [v, val] : mx.values.entries()) {
      int s = v.length();
      double lhs = val.real();
      double dom = c * rhs(v).real();
      smax[s] = std::max(smax[s], lhs);
      sdom[s] = std::max(sdom[s], dom);
      if (dom > 1e-300) sratio[s] = std::max(sratio[s], lhs / dom);
      if (lhs > dom + mx.budget + 1e-12) dominated = false;
    }
    for (int s = 0; s <= eval; ++s)
      csv.row(std::string(label) + "," + std::to_string(s) + "," +
              fmt_e(smax[s]) + "," + fmt_e(sdom[s]) + "," +
              fmt_e(sratio[s]));
    std::vector<double> half;
    for (std::size_t i = 0; i < rs.size(); i += 2) half.push_back(rs[i]);
    TreeFunctionWithBudget mh =
        maximal_apply(z, half, f, grid, cfg.shells, eval);
    double grow = 0.0;
    for (const auto& [v, val] : mh.values.entries())
      grow = std::max(grow, val.real() - mx.values(v).real());
    bool refine = grow <= 1e-15;
    std::printf("[%s] %-6s dominated by %g/(%d-1) |f|*kappa; refinement %.2e\n",
                dominated && refine ? " ok " : "FAIL", label,
                static_cast<double>(cfg.q), cfg.q, grow);
    ok = ok && dominated && refine;
  }
  if (!cfg.output.empty()) csv.write(cfg.output + "_maximal.csv");
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const parameter_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  try {
    std::printf("# %s\n", config.canonical().c_str());
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "kernel") return cmd_kernel(config);
    if (config.command == "converge") return cmd_converge(config);
    if (config.command == "heat") return cmd_heat(config);
    return cmd_maximal(config);
  } catch (const parameter_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const truncation_error& e) {
    std::fprintf(stderr, "numerical limit: %s\n", e.what());
    return 3;
  } catch (const resolution_error& e) {
    std::fprintf(stderr, "numerical limit: %s\n", e.what());
    return 3;
  } catch (const tolerance_error& e) {
    std::fprintf(stderr, "numerical limit: %s\n", e.what());
    return 3;
  } catch (const pole_error& e) {
    std::fprintf(stderr, "numerical limit: %s\n", e.what());
    return 3;
  }
}

}  // namespace treeharm

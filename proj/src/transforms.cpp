#include "treeharm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treeharm {

SpectralFunction::SpectralFunction(QuadratureGrid grid, std::vector<cxd> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw parameter_error("sample count does not match the grid");
}

SpectralFunction SpectralFunction::coarsened() const {
  QuadratureGrid g = grid_.coarsened();
  std::vector<cxd> s(g.size());
  for (int j = 0; j < g.size(); ++j) s[j] = samples_[2 * j];
  return SpectralFunction(std::move(g), std::move(s));
}

SpectralFunction spherical_transform(const RadialFunction& f,
                                     const QuadratureGrid& grid) {
  if (f.q() != grid.q()) throw parameter_error("branching number mismatch");
  SpectralParams sp(f.q());
  int N = f.shells();
  std::vector<cxd> out(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    std::vector<double> phi = spherical_function(sp, grid.node(j), N);
    cxd s = f(0);
    double vol = sp.q + 1;
    for (int n = 1; n <= N; ++n) {
      s += vol * f(n) * phi[n];
      vol *= sp.q;
    }
    out[j] = s;
  }
  return SpectralFunction(grid, std::move(out));
}

namespace {

// common body of the two inverse transforms: out(n) = sum_j coeff_j * b_j(n),
// evaluated on the full grid and on every other node, with the difference
// as the budget
struct TwoGridSums {
  std::vector<cxd> full;
  double budget;
};

template <class Basis>
TwoGridSums two_grid_inverse(const SpectralFunction& F, int count,
                             Basis&& basis_at, double scale_full) {
  const QuadratureGrid& grid = F.grid();
  int M = grid.size();
  std::vector<cxd> full(count, cxd(0.0));
  std::vector<cxd> half(count, cxd(0.0));
  double coeff_mass = 0.0;
  std::vector<cxd> row(count);
  for (int j = 0; j < M; ++j) {
    cxd c = basis_at(j, row);   // fills row, returns the node coefficient
    coeff_mass += std::abs(c);
    for (int n = 0; n < count; ++n) full[n] += c * row[n];
    if (j % 2 == 0)
      for (int n = 0; n < count; ++n) half[n] += c * row[n];
  }
  double diff = 0.0;
  for (int n = 0; n < count; ++n) {
    full[n] *= scale_full;
    half[n] *= 2.0 * scale_full;
    diff = std::max(diff, std::abs(full[n] - half[n]));
  }
  double floor = 64.0 * std::numeric_limits<double>::epsilon() * coeff_mass *
                 std::abs(scale_full);
  return {std::move(full), diff + floor};
}

}  // namespace

RadialWithBudget inverse_spherical(const SpectralFunction& F, int shells) {
  if (shells < 0) throw parameter_error("shells must be >= 0");
  const QuadratureGrid& grid = F.grid();
  int needed = 2 * shells + 8;
  if (grid.size() < needed)
    throw resolution_error("grid too coarse for the requested shells",
                           grid.size(), needed);
  SpectralParams sp(grid.q());
  double w = grid.weight();
  auto basis = [&](int j, std::vector<cxd>& row) -> cxd {
    double lam = grid.node(j);
    std::vector<double> phi = spherical_function(sp, lam, shells);
    for (int n = 0; n <= shells; ++n) row[n] = phi[n];
    return w * plancherel_weight(sp, lam) * F[j];
  };
  TwoGridSums s = two_grid_inverse(F, shells + 1, basis, 1.0);
  return {RadialFunction(grid.q(), std::move(s.full)), s.budget};
}

SequenceWithBudget fourier_inverse(const SpectralFunction& F, int max_index) {
  if (max_index < 0) throw parameter_error("max index must be >= 0");
  const QuadratureGrid& grid = F.grid();
  int needed = 2 * max_index + 8;
  if (grid.size() < needed)
    throw resolution_error("grid too coarse for the requested indices",
                           grid.size(), needed);
  SpectralParams sp(grid.q());
  const cxd i(0.0, 1.0);
  auto basis = [&](int j, std::vector<cxd>& row) -> cxd {
    double b = grid.node(j) * sp.log_q;
    cxd step = std::exp(-i * b);          // q^(-i lambda), one power per index
    cxd p = 1.0;
    for (int n = 0; n <= max_index; ++n) {
      row[n] = p;
      p *= step;
    }
    return grid.weight() * F[j];
  };
  TwoGridSums s = two_grid_inverse(F, max_index + 1, basis, 1.0 / grid.tau());
  return {std::move(s.full), s.budget};
}

RadialWithBudget abel_inverse(int q, std::span<const cxd> g, int shells,
                              int series_cutoff, double tolerance) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  if (shells < 0) throw parameter_error("shells must be >= 0");
  if (series_cutoff < 0) throw parameter_error("series cutoff must be >= 0");
  auto at = [&](int j) -> cxd {
    return j < static_cast<int>(g.size()) ? g[j] : cxd(0.0);
  };
  double sup = 0.0;
  for (const cxd& v : g) sup = std::max(sup, std::abs(v));
  double tail = 2.0 * sup * std::pow(static_cast<double>(q),
                                     -(series_cutoff + 1)) /
                (1.0 - 1.0 / q);
  if (tolerance > 0.0 && tail > tolerance)
    throw tolerance_error("series cutoff too small", tolerance, tail);
  double rq = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<cxd> out(shells + 1);
  for (int n = 0; n <= shells; ++n) {
    cxd s = 0.0;
    double factor = std::pow(rq, n);
    for (int k = 0; k <= series_cutoff; ++k) {
      s += factor * (at(n + 2 * k) - at(n + 2 * k + 2));
      factor /= q;
    }
    out[n] = s;
  }
  return {RadialFunction(q, std::move(out)), tail};
}

double radial_l2_norm(const RadialFunction& f) {
  double s = std::norm(f(0));
  double vol = f.q() + 1;
  for (int n = 1; n <= f.shells(); ++n) {
    s += vol * std::norm(f(n));
    vol *= f.q();
  }
  return std::sqrt(s);
}

double spectral_l2_norm(const SpectralFunction& F) {
  const QuadratureGrid& grid = F.grid();
  SpectralParams sp(grid.q());
  double s = 0.0;
  for (int j = 0; j < grid.size(); ++j)
    s += grid.weight() * plancherel_weight(sp, grid.node(j)) *
         std::norm(F[j]);
  return std::sqrt(s);
}

}  // namespace treeharm

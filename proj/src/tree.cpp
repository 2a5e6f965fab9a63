#include "treeharm/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treeharm {

TreeParams::TreeParams(int q, int depth) : q(q), depth(depth) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  if (depth < 1) throw parameter_error("depth must be >= 1");
}

Vertex::Vertex(int q) : q_(q) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
}

Vertex::Vertex(int q, std::vector<std::uint8_t> word)
    : q_(q), word_(std::move(word)) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  for (std::size_t i = 0; i < word_.size(); ++i) {
    int limit = (i == 0) ? q : q - 1;   // q+1 edges at the base, q elsewhere
    if (word_[i] > limit)
      throw parameter_error("label " + std::to_string(int(word_[i])) +
                            " out of range at position " + std::to_string(i));
  }
}

Vertex Vertex::parent() const {
  if (word_.empty()) throw parameter_error("base vertex has no parent");
  std::vector<std::uint8_t> w(word_.begin(), word_.end() - 1);
  Vertex v(q_);
  v.word_ = std::move(w);
  return v;
}

Vertex Vertex::child(int label) const {
  int limit = word_.empty() ? q_ : q_ - 1;
  if (label < 0 || label > limit)
    throw parameter_error("child label out of range");
  Vertex v(q_);
  v.word_ = word_;
  v.word_.push_back(static_cast<std::uint8_t>(label));
  return v;
}

int distance(const Vertex& x, const Vertex& y) {
  if (x.q() != y.q())
    throw parameter_error("vertices from trees with different q");
  const auto& a = x.word();
  const auto& b = y.word();
  std::size_t p = 0;
  std::size_t m = std::min(a.size(), b.size());
  while (p < m && a[p] == b[p]) ++p;
  return static_cast<int>(a.size() + b.size() - 2 * p);
}

std::uint64_t sphere_size(const TreeParams& params, int n) {
  if (n < 0) throw parameter_error("sphere radius must be >= 0");
  if (n == 0) return 1;
  unsigned __int128 s = params.q + 1;
  for (int i = 1; i < n; ++i) {
    s *= params.q;
    if (s > std::numeric_limits<std::uint64_t>::max())
      throw parameter_error("sphere size overflows 64 bits");
  }
  return static_cast<std::uint64_t>(s);
}

double shell_volume(int q, int n) {
  if (n == 0) return 1.0;
  return (q + 1) * std::pow(static_cast<double>(q), n - 1);
}

std::uint64_t ball_size(const TreeParams& params, int radius) {
  if (radius < 0) throw parameter_error("ball radius must be >= 0");
  unsigned __int128 total = 1;
  unsigned __int128 shell = params.q + 1;
  for (int n = 1; n <= radius; ++n) {
    total += shell;
    shell *= params.q;
    if (total > std::numeric_limits<std::uint64_t>::max())
      throw parameter_error("ball size overflows 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

// all descendants of v exactly m generations below it
void descend(const Vertex& v, int m, std::vector<Vertex>& out) {
  if (m == 0) {
    out.push_back(v);
    return;
  }
  int nch = v.is_base() ? v.q() + 1 : v.q();
  for (int l = 0; l < nch; ++l) descend(v.child(l), m - 1, out);
}

}  // namespace

std::vector<Vertex> sphere(const TreeParams& params, const Vertex& x, int n) {
  if (x.q() != params.q) throw parameter_error("vertex q mismatch");
  if (n < 0) throw parameter_error("sphere radius must be >= 0");
  if (x.length() > params.depth)
    throw parameter_error("vertex outside the ball");
  if (x.length() + n > params.depth)
    throw truncation_error("sphere leaves the ball", x.length() + n);
  std::vector<Vertex> out;
  // meet x's path k steps above x, then branch away and go n-k down
  descend(x, n, out);
  Vertex a = x;
  for (int k = 1; k <= std::min(n, x.length()); ++k) {
    std::uint8_t towards = a.word().back();  // step from parent(a) to a
    a = a.parent();
    if (n - k == 0) {
      out.push_back(a);
      continue;
    }
    int nch = a.is_base() ? a.q() + 1 : a.q();
    for (int l = 0; l < nch; ++l) {
      if (l == towards) continue;
      descend(a.child(l), n - k - 1, out);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void collect_ball(const Vertex& v, int radius, std::vector<Vertex>& out) {
  out.push_back(v);
  if (v.length() == radius) return;
  int nch = v.is_base() ? v.q() + 1 : v.q();
  for (int l = 0; l < nch; ++l) collect_ball(v.child(l), radius, out);
}

}  // namespace

std::vector<Vertex> ball_vertices(const TreeParams& params, int radius) {
  if (radius < 0) throw parameter_error("ball radius must be >= 0");
  if (radius > params.depth)
    throw truncation_error("ball larger than the truncated tree", radius);
  std::vector<Vertex> out;
  out.reserve(ball_size(params, radius));
  collect_ball(Vertex(params.q), radius, out);  // DFS order = lexicographic
  return out;
}

RadialFunction::RadialFunction(int q, std::vector<cxd> values,
                               std::optional<double> geometric_tail)
    : q_(q), values_(std::move(values)), tail_(geometric_tail) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  if (values_.empty()) throw parameter_error("radial function needs shell 0");
  if (tail_ && !(std::isfinite(*tail_) && *tail_ >= 0.0))
    throw parameter_error("geometric tail ratio must be finite and >= 0");
}

TreeFunction::TreeFunction(TreeParams params) : params_(params) {}

void TreeFunction::set(const Vertex& x, cxd value) {
  if (x.q() != params_.q) throw parameter_error("vertex q mismatch");
  if (x.length() > params_.depth)
    throw parameter_error("vertex outside the ball");
  if (value == cxd(0.0))
    values_.erase(x);
  else
    values_[x] = value;
}

cxd TreeFunction::operator()(const Vertex& x) const {
  if (x.q() != params_.q) throw parameter_error("vertex q mismatch");
  auto it = values_.find(x);
  return it == values_.end() ? cxd(0.0) : it->second;
}

int TreeFunction::support_radius() const {
  int r = 0;
  for (const auto& [v, val] : values_) r = std::max(r, v.length());
  return r;
}

TreeFunction delta(const TreeParams& params, const Vertex& x) {
  TreeFunction f(params);
  f.set(x, cxd(1.0));
  return f;
}

double lp_norm(const TreeFunction& f, double p) {
  if (std::isnan(p) || p < 1.0)
    throw parameter_error("lp norm needs p in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [v, val] : f.entries()) m = std::max(m, std::abs(val));
    return m;
  }
  double s = 0.0;
  for (const auto& [v, val] : f.entries()) s += std::pow(std::abs(val), p);
  return std::pow(s, 1.0 / p);
}

TreeFunction mean_apply(const TreeFunction& f) {
  const auto& params = f.params();
  double inv = 1.0 / (params.q + 1);
  std::map<Vertex, cxd> acc;
  for (const auto& [v, val] : f.entries()) {
    if (v.length() == params.depth)
      throw truncation_error("support touches the ball boundary",
                             params.depth + 1);
    cxd w = val * inv;
    if (!v.is_base()) acc[v.parent()] += w;
    int nch = v.is_base() ? params.q + 1 : params.q;
    for (int l = 0; l < nch; ++l) acc[v.child(l)] += w;
  }
  TreeFunction out(params);
  for (const auto& [v, val] : acc) out.set(v, val);
  return out;
}

TreeFunction laplacian_apply(const TreeFunction& f) {
  TreeFunction out = f;
  TreeFunction mf = mean_apply(f);
  for (const auto& [v, val] : mf.entries()) out.set(v, out(v) - val);
  return out;
}

ConvolutionPlan::ConvolutionPlan(const TreeFunction& f, int eval_radius,
                                 int max_shell)
    : params_(f.params()), eval_radius_(eval_radius), max_shell_(max_shell) {
  if (eval_radius < 0) throw parameter_error("eval radius must be >= 0");
  if (max_shell < 0) throw parameter_error("max shell must be >= 0");
  if (eval_radius + max_shell > params_.depth)
    throw truncation_error("convolution reaches outside the ball",
                           eval_radius + max_shell);
  points_ = ball_vertices(params_, eval_radius);
  buckets_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto& b = buckets_[i];
    b.assign(max_shell + 1, cxd(0.0));
    for (const auto& [y, val] : f.entries()) {
      int d = distance(points_[i], y);
      if (d <= max_shell) b[d] += val;
    }
  }
}

TreeFunction ConvolutionPlan::apply(const RadialFunction& kernel) const {
  if (kernel.q() != params_.q) throw parameter_error("kernel q mismatch");
  if (kernel.shells() > max_shell_)
    throw parameter_error("kernel has more shells than the plan");
  TreeFunction out(params_);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    cxd s = 0.0;
    for (int n = 0; n <= kernel.shells(); ++n)
      s += kernel(n) * buckets_[i][n];
    out.set(points_[i], s);
  }
  return out;
}

TreeFunction radial_convolve(const TreeFunction& f, const RadialFunction& k,
                             int eval_radius) {
  if (f.params().q != k.q()) throw parameter_error("kernel q mismatch");
  return ConvolutionPlan(f, eval_radius, k.shells()).apply(k);
}

Ball::Ball(int q, int depth) : q_(q), depth_(depth) {
  if (q < 2) throw parameter_error("branching number q must be >= 2");
  if (depth < 1) throw parameter_error("depth must be >= 1");
  offsets_.resize(depth + 2);
  unsigned __int128 total = 0;
  unsigned __int128 shell = 1;
  for (int l = 0; l <= depth; ++l) {
    offsets_[l] = static_cast<std::uint64_t>(total);
    total += shell;
    shell = (l == 0) ? static_cast<unsigned __int128>(q + 1) : shell * q;
    if (total > std::numeric_limits<std::uint64_t>::max())
      throw parameter_error("ball size overflows 64 bits");
  }
  offsets_[depth + 1] = static_cast<std::uint64_t>(total);
}

int Ball::level_of(std::uint64_t index) const {
  if (index >= size()) throw parameter_error("index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

std::uint64_t Ball::index_of(const Vertex& v) const {
  if (v.q() != q_) throw parameter_error("vertex q mismatch");
  int l = v.length();
  if (l > depth_) throw parameter_error("vertex outside the ball");
  if (l == 0) return 0;
  // rank within the level: first label in base q+1? no -- the level has
  // (q+1) q^(l-1) vertices ordered lexicographically, so the first label
  // scales by q^(l-1) and the rest are base-q digits
  std::uint64_t p = 1;
  for (int i = 1; i < l; ++i) p *= q_;
  std::uint64_t r = v.word()[0] * p;
  for (int i = 1; i < l; ++i) {
    p /= q_;
    r += v.word()[i] * p;
  }
  return offsets_[l] + r;
}

Vertex Ball::vertex_at(std::uint64_t index) const {
  int l = level_of(index);
  if (l == 0) return Vertex(q_);
  std::uint64_t r = index - offsets_[l];
  std::uint64_t p = 1;
  for (int i = 1; i < l; ++i) p *= q_;
  std::vector<std::uint8_t> w(l);
  w[0] = static_cast<std::uint8_t>(r / p);
  r %= p;
  for (int i = 1; i < l; ++i) {
    p /= q_;
    w[i] = static_cast<std::uint8_t>(r / p);
    r %= p;
  }
  return Vertex(q_, std::move(w));
}

std::uint64_t Ball::parent_index(std::uint64_t index) const {
  int l = level_of(index);
  if (l == 0) throw parameter_error("base vertex has no parent");
  if (l == 1) return 0;
  std::uint64_t r = index - offsets_[l];
  return offsets_[l - 1] + r / q_;
}

std::pair<std::uint64_t, std::uint64_t> Ball::child_range(
    std::uint64_t index) const {
  int l = level_of(index);
  if (l == depth_) throw parameter_error("vertex on the ball boundary");
  if (l == 0) return {offsets_[1], offsets_[2]};
  std::uint64_t r = index - offsets_[l];
  std::uint64_t beg = offsets_[l + 1] + r * q_;
  return {beg, beg + q_};
}

void Ball::mean_interior(std::span<const double> in,
                         std::span<double> out) const {
  if (in.size() != size() || out.size() != interior_size())
    throw parameter_error("mean_interior: wrong array sizes");
  double inv = 1.0 / (q_ + 1);
  {
    double s = 0.0;
    for (std::uint64_t i = offsets_[1]; i < offsets_[2]; ++i) s += in[i];
    out[0] = s * inv;
  }
  for (int l = 1; l < depth_; ++l) {
    std::uint64_t beg = offsets_[l], end = offsets_[l + 1];
    std::uint64_t cbase = offsets_[l + 1];
    std::uint64_t pbase = offsets_[l - 1];
    for (std::uint64_t i = beg; i < end; ++i) {
      std::uint64_t r = i - beg;
      double s = in[(l == 1) ? 0 : pbase + r / q_];
      const double* ch = in.data() + cbase + r * q_;
      for (int c = 0; c < q_; ++c) s += ch[c];
      out[i] = s * inv;
    }
  }
}

}  // namespace treeharm

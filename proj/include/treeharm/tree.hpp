#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "treeharm/errors.hpp"

namespace treeharm {

using cxd = std::complex<double>;

// Homogeneous tree in which every vertex has q+1 neighbours, truncated to the
// ball of radius `depth` around a fixed base vertex.  q >= 2, depth >= 1.
struct TreeParams {
  int q;
  int depth;

  TreeParams(int q, int depth);
};

// A vertex is the label word of the path from the base vertex down to it.
// The base vertex is the empty word.  The first step may take any of the q+1
// edges at the base (labels 0..q); every later step avoids the edge back
// towards the base, leaving q choices (labels 0..q-1).
class Vertex {
 public:
  explicit Vertex(int q);                                  // base vertex
  Vertex(int q, std::vector<std::uint8_t> word);

  int q() const { return q_; }
  int length() const { return static_cast<int>(word_.size()); }
  const std::vector<std::uint8_t>& word() const { return word_; }

  bool is_base() const { return word_.empty(); }
  Vertex parent() const;                                   // error on base
  Vertex child(int label) const;

  bool operator==(const Vertex& o) const {
    return q_ == o.q_ && word_ == o.word_;
  }
  // Lexicographic on the label word (shorter prefix first); total order used
  // for deterministic iteration.
  bool operator<(const Vertex& o) const {
    if (q_ != o.q_) return q_ < o.q_;
    return word_ < o.word_;
  }

 private:
  int q_;
  std::vector<std::uint8_t> word_;
};

// d(x,y) = |x| + |y| - 2*(length of the longest common prefix).
int distance(const Vertex& x, const Vertex& y);

// Number of vertices at distance exactly n from any fixed vertex:
// 1 for n = 0, (q+1) q^(n-1) for n >= 1.  Throws parameter_error if the
// count does not fit in 64 bits.
std::uint64_t sphere_size(const TreeParams& params, int n);

// Same count as a double, valid for all n >= 0.
double shell_volume(int q, int n);

// Number of vertices in the ball of radius `radius`.
std::uint64_t ball_size(const TreeParams& params, int radius);

// All vertices at distance n from x, in lexicographic order.  Requires
// |x| + n <= depth, else truncation_error.
std::vector<Vertex> sphere(const TreeParams& params, const Vertex& x, int n);

// All vertices of the ball of radius `radius` around the base vertex, in
// lexicographic order.
std::vector<Vertex> ball_vertices(const TreeParams& params, int radius);

// Radial kernel: one complex value per distance shell 0..shells().  If
// `geometric_tail` is set to t, the values continue beyond the last stored
// shell as value(shells())*t^(n-shells()); the tail is used only by norm
// computations, evaluation beyond the stored range returns 0.
class RadialFunction {
 public:
  RadialFunction(int q, std::vector<cxd> values,
                 std::optional<double> geometric_tail = std::nullopt);

  int q() const { return q_; }
  int shells() const { return static_cast<int>(values_.size()) - 1; }
  cxd operator()(int n) const {
    return (n >= 0 && n <= shells()) ? values_[n] : cxd(0.0);
  }
  const std::vector<cxd>& values() const { return values_; }
  std::optional<double> geometric_tail() const { return tail_; }

 private:
  int q_;
  std::vector<cxd> values_;
  std::optional<double> tail_;
};

// Finitely supported complex function on the truncated tree, stored sparsely.
class TreeFunction {
 public:
  explicit TreeFunction(TreeParams params);

  const TreeParams& params() const { return params_; }
  void set(const Vertex& x, cxd value);      // value 0 erases the entry
  cxd operator()(const Vertex& x) const;
  std::size_t support_size() const { return values_.size(); }
  int support_radius() const;                // 0 for the zero function
  const std::map<Vertex, cxd>& entries() const { return values_; }

 private:
  TreeParams params_;
  std::map<Vertex, cxd> values_;
};

// Point mass at x.
TreeFunction delta(const TreeParams& params, const Vertex& x);

// l^p norm with counting measure; p in [1, inf], p = infinity gives the sup.
double lp_norm(const TreeFunction& f, double p);

// Neighbour average (Mf)(x) = (1/(q+1)) * sum over the q+1 neighbours of x.
// The support of f must stay strictly inside the ball so that every
// neighbour value is known; otherwise truncation_error.
TreeFunction mean_apply(const TreeFunction& f);

// (I - M) f.
TreeFunction laplacian_apply(const TreeFunction& f);

// Distance buckets of f around each vertex of the ball of radius
// `eval_radius`: bucket(x, n) = sum of f over the sphere of radius n at x.
// Convolving with any radial kernel supported on shells <= max_shell is then
// a dot product per evaluation vertex.  Requires
// eval_radius + max_shell <= depth so that all touched vertices exist.
class ConvolutionPlan {
 public:
  ConvolutionPlan(const TreeFunction& f, int eval_radius, int max_shell);

  TreeFunction apply(const RadialFunction& kernel) const;
  int eval_radius() const { return eval_radius_; }
  int max_shell() const { return max_shell_; }
  const TreeParams& params() const { return params_; }

 private:
  TreeParams params_;
  int eval_radius_;
  int max_shell_;
  std::vector<Vertex> points_;
  std::vector<std::vector<cxd>> buckets_;    // one vector per point
};

// (f * k)(x) = sum_n k(n) * (sum of f over the sphere of radius n at x),
// evaluated for |x| <= eval_radius.
TreeFunction radial_convolve(const TreeFunction& f, const RadialFunction& k,
                             int eval_radius);

// Dense storage for a full ball, used where sparse maps are too slow.  The
// vertices of the ball are indexed level by level; within a level the index
// order is lexicographic in the label word, so parent/child indices are
// plain integer arithmetic and never materialised.
class Ball {
 public:
  Ball(int q, int depth);

  int q() const { return q_; }
  int depth() const { return depth_; }
  std::uint64_t size() const { return offsets_[depth_ + 1]; }
  std::uint64_t interior_size() const { return offsets_[depth_]; }
  std::uint64_t level_offset(int level) const { return offsets_[level]; }
  std::uint64_t level_size(int level) const {
    return offsets_[level + 1] - offsets_[level];
  }

  int level_of(std::uint64_t index) const;
  std::uint64_t index_of(const Vertex& v) const;
  Vertex vertex_at(std::uint64_t index) const;

  // parent/child in index space
  std::uint64_t parent_index(std::uint64_t index) const;
  // children of the vertex at `index` occupy a contiguous index range
  std::pair<std::uint64_t, std::uint64_t> child_range(
      std::uint64_t index) const;

  // out[i] = neighbour average of `in` at vertex i, for every interior
  // vertex i (level < depth).  in.size() == size(),
  // out.size() == interior_size().
  void mean_interior(std::span<const double> in, std::span<double> out) const;

 private:
  int q_;
  int depth_;
  std::vector<std::uint64_t> offsets_;  // offsets_[l] = index of first level-l vertex
};

}  // namespace treeharm

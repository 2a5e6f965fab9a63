#pragma once

// Reference implementations used only by the tests.  Everything here
// recomputes a library quantity by a different route: an explicit adjacency
// graph with BFS instead of word arithmetic, the radial shell recurrence
// instead of dense sweeps, the exponential power series instead of spectral
// quadrature, and composite Simpson instead of the periodic trapezoid rule.

#include <complex>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "treeharm/tree.hpp"

namespace oracles {

using treeharm::cxd;
using treeharm::TreeParams;
using treeharm::Vertex;

// Two label words are adjacent exactly when one is the other plus a single
// trailing label.
inline bool adjacent_words(const std::vector<std::uint8_t>& a,
                           const std::vector<std::uint8_t>& b) {
  const auto& s = a.size() < b.size() ? a : b;
  const auto& l = a.size() < b.size() ? b : a;
  if (l.size() != s.size() + 1) return false;
  return std::equal(s.begin(), s.end(), l.begin());
}

// Explicit graph of the ball: vertices materialised breadth first from the
// base word, edges found by scanning all pairs.  Quadratic on purpose; only
// used on small balls.
struct BallGraph {
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> neighbours;

  BallGraph(const TreeParams& tp, int radius) {
    std::queue<std::vector<std::uint8_t>> frontier;
    frontier.push({});
    while (!frontier.empty()) {
      std::vector<std::uint8_t> w = frontier.front();
      frontier.pop();
      vertices.emplace_back(tp.q, w);
      if (static_cast<int>(w.size()) == radius) continue;
      int labels = w.empty() ? tp.q + 1 : tp.q;
      for (int l = 0; l < labels; ++l) {
        std::vector<std::uint8_t> c = w;
        c.push_back(static_cast<std::uint8_t>(l));
        frontier.push(std::move(c));
      }
    }
    neighbours.resize(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (adjacent_words(vertices[i].word(), vertices[j].word())) {
          neighbours[i].push_back(static_cast<int>(j));
          neighbours[j].push_back(static_cast<int>(i));
        }
  }

  std::vector<int> bfs_from(int source) const {
    std::vector<int> dist(vertices.size(), -1);
    std::queue<int> todo;
    dist[source] = 0;
    todo.push(source);
    while (!todo.empty()) {
      int u = todo.front();
      todo.pop();
      for (int v : neighbours[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          todo.push(v);
        }
    }
    return dist;
  }
};

// Neighbour average acting on radial shell values: at the base all q+1
// neighbours sit on shell 1, at shell n one neighbour drops to n-1 and q
// rise to n+1.  Values beyond the input range count as 0, so the result is
// trustworthy on shells 0..size-2.
inline std::vector<double> shell_mean(int q, const std::vector<double>& f) {
  std::vector<double> out(f.size(), 0.0);
  auto at = [&](std::size_t n) { return n < f.size() ? f[n] : 0.0; };
  out[0] = at(1);
  for (std::size_t n = 1; n < f.size(); ++n)
    out[n] = (at(n - 1) + q * at(n + 1)) / (q + 1.0);
  return out;
}

// Heat kernel shell values through e^(-t) sum_k t^k/k! M^k applied to the
// point mass, truncated when the Poisson tail drops below tail_tol.  The
// iterates stay bounded by 1, so the truncation error per shell is at most
// the discarded Poisson mass.
inline std::vector<double> heat_series(int q, double t, int shells,
                                       double tail_tol) {
  int reach = shells + 8;
  std::vector<double> state(reach + 1, 0.0);
  state[0] = 1.0;
  std::vector<double> acc(shells + 1, 0.0);
  double weight = std::exp(-t);   // e^(-t) t^k / k!
  double covered = weight;
  for (int k = 0;; ++k) {
    for (int n = 0; n <= shells; ++n) acc[n] += weight * state[n];
    if (k >= 1 && 1.0 - covered < tail_tol) break;
    if (k > 4000) throw std::runtime_error("heat series did not converge");
    state = shell_mean(q, state);
    weight *= t / (k + 1);
    covered += weight;
  }
  return acc;
}

// Composite Simpson rule; intervals must be even.
template <class F>
double simpson(F&& f, double a, double b, int intervals) {
  double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Convolution with a radial kernel by the definition: for each evaluation
// vertex walk the whole support and bucket by distance.
inline treeharm::TreeFunction convolve_brute(const treeharm::TreeFunction& f,
                                             const treeharm::RadialFunction& k,
                                             int eval_radius) {
  treeharm::TreeFunction out(f.params());
  for (const Vertex& x : ball_vertices(f.params(), eval_radius)) {
    cxd s = 0.0;
    for (const auto& [y, val] : f.entries()) s += k(distance(x, y)) * val;
    out.set(x, s);
  }
  return out;
}

}  // namespace oracles

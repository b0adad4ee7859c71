#pragma once
// Independent reference computations used only by the tests. They favour
// the most direct reading of each definition over speed.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "specglauber/graph.hpp"
#include "specglauber/model.hpp"

namespace oracle {

using specglauber::Graph;
using specglauber::GibbsParams;
using specglauber::Vertex;

using Walk = std::vector<Vertex>;

/// All walks from w that are either self-avoiding, or self-avoiding up to
/// the last step which returns to a vertex at least three steps back.
/// Walks reaching a pinned vertex stop there. Built breadth-first over
/// explicit sequences.
inline std::vector<Walk> tree_walks(const Graph& g, Vertex w, const std::vector<int>& pins) {
  std::vector<Walk> out{{w}};
  std::vector<Walk> frontier{{w}};
  while (!frontier.empty()) {
    std::vector<Walk> next;
    for (const auto& walk : frontier) {
      const Vertex last = walk.back();
      for (Vertex y = 0; y < g.num_vertices(); ++y) {
        if (!g.adjacent(last, y)) continue;
        int j = -1;
        for (int i = 0; i < static_cast<int>(walk.size()); ++i)
          if (walk[i] == y) j = i;
        const int r = static_cast<int>(walk.size());
        Walk ext = walk;
        ext.push_back(y);
        if (j < 0) {
          out.push_back(ext);
          if (pins[y] == 0) next.push_back(ext);
        } else if (j <= r - 3) {
          out.push_back(ext);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Self-avoiding walks from w of any length (including the trivial one),
/// never entering a pinned vertex.
inline std::vector<Walk> self_avoiding_walks(const Graph& g, Vertex w,
                                             const std::vector<int>& pins) {
  std::vector<Walk> out;
  std::function<void(Walk&)> rec = [&](Walk& walk) {
    out.push_back(walk);
    for (Vertex y = 0; y < g.num_vertices(); ++y) {
      if (!g.adjacent(walk.back(), y) || pins[y] != 0) continue;
      bool seen = false;
      for (Vertex v : walk) seen |= v == y;
      if (seen) continue;
      walk.push_back(y);
      rec(walk);
      walk.pop_back();
    }
  };
  Walk start{w};
  rec(start);
  return out;
}

/// Number of walks of exactly len steps from u to v.
inline long long walk_count(const Graph& g, Vertex u, Vertex v, int len) {
  if (len == 0) return u == v;
  long long total = 0;
  for (Vertex x = 0; x < g.num_vertices(); ++x)
    if (g.adjacent(u, x)) total += walk_count(g, x, v, len - 1);
  return total;
}

/// Max modulus eigenvalue from a general dense eigensolver.
inline double max_modulus(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double max_imag(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  return es.eigenvalues().imag().cwiseAbs().maxCoeff();
}

/// Direct Gibbs weight with plain powers.
inline double weight(const Graph& g, const GibbsParams& p, const std::vector<int>& sigma) {
  double w = 1.0;
  for (int s : sigma)
    if (s > 0) w *= p.lambda;
  for (auto [a, b] : g.edges()) {
    if (sigma[a] > 0 && sigma[b] > 0) w *= p.beta;
    if (sigma[a] < 0 && sigma[b] < 0) w *= p.gamma;
  }
  return w;
}

/// P(v = +1 | pins) by summing over all 2^n configurations.
inline double conditional_plus(const Graph& g, const GibbsParams& p,
                               const std::vector<int>& pins, Vertex v) {
  const int n = g.num_vertices();
  double z = 0.0, plus = 0.0;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      sigma[i] = ((mask >> i) & 1u) ? 1 : -1;
      if (pins[i] != 0 && pins[i] != sigma[i]) ok = false;
    }
    if (!ok) continue;
    const double w = weight(g, p, sigma);
    z += w;
    if (sigma[v] > 0) plus += w;
  }
  return z > 0.0 ? plus / z : std::nan("");
}

/// Influence of w on u by two conditioned sums; 0 when a conditioning event
/// is impossible.
inline double influence(const Graph& g, const GibbsParams& p, std::vector<int> pins,
                        Vertex w, Vertex u) {
  if (w == u) return 1.0;
  const double pw = conditional_plus(g, p, pins, w);
  if (!(pw > 0.0 && pw < 1.0)) return 0.0;
  pins[w] = 1;
  const double a = conditional_plus(g, p, pins, u);
  pins[w] = -1;
  const double b = conditional_plus(g, p, pins, u);
  return a - b;
}

}  // namespace oracle

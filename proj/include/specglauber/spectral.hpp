#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/matrix.hpp"

namespace specglauber {

inline LabeledMatrix adjacency_matrix(const Graph& g) {
  std::vector<Vertex> vs(static_cast<std::size_t>(g.num_vertices()));
  std::iota(vs.begin(), vs.end(), 0);
  LabeledMatrix a(vertex_labels(vs), vertex_labels(vs));
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  return a;
}

/// Non-backtracking matrix on oriented edges: H(e, f) = 1 iff f continues e
/// without reversing it.
inline LabeledMatrix hashimoto_matrix(const Graph& g) {
  const auto es = oriented_edges(g);
  LabeledMatrix h(edge_labels(es), edge_labels(es));
  // oriented_edges is sorted by tail, so edges leaving x form a block.
  std::vector<int> first(static_cast<std::size_t>(g.num_vertices()) + 1, 0);
  for (const auto& e : es) ++first[e.tail + 1];
  for (int v = 0; v < g.num_vertices(); ++v) first[v + 1] += first[v];
  for (int i = 0; i < static_cast<int>(es.size()); ++i)
    for (int j = first[es[i].head]; j < first[es[i].head + 1]; ++j)
      if (es[j].head != es[i].tail) h(i, j) = 1.0;
  return h;
}

struct SpectralResult {
  double radius = 0.0;
  Eigen::VectorXd right_vec;
  Eigen::VectorXd left_vec;
  double residual = 0.0;
  long iterations = 0;
};

struct PerronOptions {
  double tol = 1e-12;
  long max_iter = 1'000'000;
};

namespace detail {

struct PowerOutcome {
  double radius;
  Eigen::VectorXd vec;
  double residual;
  long iterations;
};

// Power iteration on M + cI with c the largest row sum; the shift makes the
// iteration matrix primitive, so periodic (e.g. bipartite) inputs converge.
// Stops once the Collatz-Wielandt bracket min_i (Mx)_i/x_i <= rho <=
// max_i (Mx)_i/x_i is narrower than tol (relative to max(1, rho)).
inline PowerOutcome power_iterate(const Eigen::MatrixXd& m, const PerronOptions& opt) {
  const Eigen::Index n = m.rows();
  const double shift = m.rowwise().sum().maxCoeff();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd mx(n);
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  long it = 0;
  for (; it < opt.max_iter; ++it) {
    mx.noalias() = m * x;
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double q = mx(i) / x(i);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    if (hi - lo <= opt.tol * std::max(1.0, hi)) break;
    x = mx + shift * x;
    x /= x.sum();
  }
  const double rho = 0.5 * (lo + hi);
  const double residual = (m * x - rho * x).cwiseAbs().maxCoeff();
  if (it >= opt.max_iter)
    throw ConvergenceError("power iteration did not converge within " +
                               std::to_string(opt.max_iter) + " iterations",
                           hi - lo);
  return {rho, x, residual, it + 1};
}

}  // namespace detail

/// Perron root with unit 1-norm right and left eigenvectors of a
/// non-negative irreducible matrix.
inline SpectralResult perron(const Eigen::MatrixXd& m, const PerronOptions& opt = {}) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw PreconditionError("perron needs a non-empty square matrix");
  if ((m.array() < 0.0).any()) throw PreconditionError("perron needs a non-negative matrix");
  auto comps = strong_components(m);
  if (comps.size() != 1)
    throw ReducibleError("matrix support is not strongly connected (" +
                             std::to_string(comps.size()) + " components)",
                         std::move(comps));
  if (m.rows() == 1) {
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
    return {m(0, 0), one, one, 0.0, 0};
  }
  const auto right = detail::power_iterate(m, opt);
  const auto left = detail::power_iterate(m.transpose(), opt);
  SpectralResult r;
  r.radius = right.radius;
  r.right_vec = right.vec;
  r.left_vec = left.vec;
  r.residual = std::max(right.residual, left.residual);
  r.iterations = right.iterations + left.iterations;
  return r;
}

inline SpectralResult perron(const LabeledMatrix& m, const PerronOptions& opt = {}) {
  return perron(m.entries(), opt);
}

inline double adjacency_radius(const Graph& g, const PerronOptions& opt = {}) {
  return perron(adjacency_matrix(g), opt).radius;
}

inline bool hashimoto_irreducible(const Graph& g) {
  if (g.num_edges() == 0) return false;
  return irreducible(hashimoto_matrix(g).entries());
}

/// Perron data of H_G, with the matrix kept for lookups by oriented edge.
struct HashimotoSpectrum {
  LabeledMatrix h;
  SpectralResult perron;

  double theta() const noexcept { return perron.radius; }
  double kappa(OrientedEdge e) const { return perron.right_vec(h.row_index({e.tail, e.head})); }
  double psi(OrientedEdge e) const { return perron.left_vec(h.row_index({e.tail, e.head})); }
};

inline HashimotoSpectrum hashimoto_spectrum(const Graph& g, const PerronOptions& opt = {}) {
  HashimotoSpectrum s{hashimoto_matrix(g), {}};
  s.perron = perron(s.h, opt);
  return s;
}

/// max_e psi_1(e) / kappa_1(e).
inline double weak_normality(const Graph& g, const PerronOptions& opt = {}) {
  const auto s = hashimoto_spectrum(g, opt);
  return s.perron.left_vec.cwiseQuotient(s.perron.right_vec).maxCoeff();
}

/// H^k(e, f) == H^k(f^{-1}, e^{-1}) for all e, f and 1 <= k <= k_max, in
/// exact integer arithmetic.
inline bool check_pt_invariance(const Graph& g, int k_max) {
  const auto es = oriented_edges(g);
  const int m = static_cast<int>(es.size());
  if (m == 0) return true;
  const LabeledMatrix h = hashimoto_matrix(g);
  using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  const IMat hi = h.entries().cast<std::int64_t>();
  std::vector<int> rev(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) rev[i] = h.row_index({es[i].head, es[i].tail});
  IMat p = hi;
  for (int k = 1; k <= k_max; ++k) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (p(i, j) != p(rev[j], rev[i])) return false;
    if (k < k_max) p = p * hi;
  }
  return true;
}

struct EigenvectorRelations {
  double reversal_violation = 0.0;     // max_e |kappa(e) - psi(e^{-1})|
  double continuation_violation = 0.0; // max_e |sum of kappa over continuations - theta kappa(e)|
  double max_violation() const { return std::max(reversal_violation, continuation_violation); }
};

inline EigenvectorRelations check_eigenvector_relations(const Graph& g,
                                                        const PerronOptions& opt = {}) {
  const auto s = hashimoto_spectrum(g, opt);
  EigenvectorRelations r;
  const auto es = oriented_edges(g);
  for (const auto& e : es) {
    r.reversal_violation =
        std::max(r.reversal_violation, std::abs(s.kappa(e) - s.psi(e.reverse())));
    double sum = 0.0;  // e = wu; continuations uv with v != w
    for (Vertex v : g.neighbors(e.head))
      if (v != e.tail) sum += s.kappa({e.head, v});
    r.continuation_violation =
        std::max(r.continuation_violation, std::abs(sum - s.theta() * s.kappa(e)));
  }
  return r;
}

struct BacktrackEdge {
  OrientedEdge edge;
  std::optional<int> steps;  // least l <= L with H^l(e, e^{-1}) > 0
  double lhs = 0.0;          // kappa(e^{-1})
  double rhs = 0.0;          // theta^{l-1} kappa(e)
  double slack() const { return rhs - lhs; }
};

struct BacktrackReport {
  double theta = 0.0;
  std::vector<BacktrackEdge> edges;
  double min_slack() const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& e : edges)
      if (e.steps) s = std::min(s, e.slack());
    return s;
  }
  bool all_return() const {
    return std::all_of(edges.begin(), edges.end(), [](const auto& e) { return e.steps.has_value(); });
  }
};

/// For each oriented edge e, the shortest non-backtracking return to e^{-1}
/// (by BFS on the support of H) and the comparison
/// kappa(e^{-1}) <= theta^{l-1} kappa(e) at that l.
inline BacktrackReport backtrack_bound(const Graph& g, int max_len,
                                       const PerronOptions& opt = {}) {
  const auto s = hashimoto_spectrum(g, opt);
  const int m = s.h.rows();
  BacktrackReport rep;
  rep.theta = s.theta();
  for (int i = 0; i < m; ++i) {
    const Label l = s.h.row_labels()[i];
    const OrientedEdge e{l.first, l.second};
    const int target = s.h.row_index({e.head, e.tail});
    std::vector<int> dist(static_cast<std::size_t>(m), -1);
    std::deque<int> q{i};
    dist[i] = 0;
    std::optional<int> found;
    while (!q.empty() && !found) {
      const int a = q.front();
      q.pop_front();
      if (dist[a] >= max_len) continue;
      for (int b = 0; b < m; ++b) {
        if (s.h(a, b) == 0.0) continue;
        if (b == target) {
          found = dist[a] + 1;
          break;
        }
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          q.push_back(b);
        }
      }
    }
    BacktrackEdge be{e, found, s.perron.right_vec(target), 0.0};
    if (found) be.rhs = std::pow(rep.theta, *found - 1) * s.perron.right_vec(i);
    rep.edges.push_back(be);
  }
  return rep;
}

/// Spectral-radius bound for planar graphs of maximum degree delta.
inline double planar_rho_bound(int delta) {
  if (delta < 1) throw PreconditionError("planar_rho_bound needs delta >= 1");
  if (delta <= 5) return delta;
  if (delta <= 36) return std::sqrt(12.0 * delta - 36.0);
  return std::sqrt(8.0 * delta - 16.0) + 2.0 * std::sqrt(3.0);
}

/// Spectral-radius bound for graphs of genus g; empty when delta < d(g) + 2.
inline std::optional<double> genus_rho_bound(int delta, int genus) {
  if (genus < 0) throw PreconditionError("genus must be non-negative");
  int d;
  if (genus <= 1) d = 10;
  else if (genus <= 3) d = 12;
  else if (genus <= 5) d = 2 * genus + 6;
  else d = 2 * genus + 4;
  if (delta < d + 2) return std::nullopt;
  return std::sqrt(8.0 * (delta - d)) + d;
}

}  // namespace specglauber

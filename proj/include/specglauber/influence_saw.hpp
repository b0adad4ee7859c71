#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/matrix.hpp"
#include "specglauber/model.hpp"
#include "specglauber/recursion.hpp"
#include "specglauber/saw_tree.hpp"

namespace specglauber {

/// Per-node log-ratios and per-edge influence weights of a walk tree.
/// weight[i] belongs to the edge parent(i) -> i (0 at the root); product[i]
/// is the product of weights from the root down to i.
struct SawWeights {
  std::vector<double> log_ratio;
  std::vector<double> weight;
  std::vector<double> product;
};

inline SawWeights saw_weights(const SawTree& t, const GibbsParams& p) {
  const int n = t.size();
  SawWeights w;
  w.log_ratio.assign(static_cast<std::size_t>(n), 0.0);
  w.weight.assign(static_cast<std::size_t>(n), 0.0);
  w.product.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> ys;
  for (int i = n - 1; i >= 0; --i) {  // preorder reversed: children first
    const auto& nd = t.node(i);
    if (nd.fixed_spin != 0) {
      w.log_ratio[i] = nd.fixed_spin > 0 ? inf : -inf;
      continue;
    }
    ys.clear();
    for (int c : nd.children) ys.push_back(w.log_ratio[c]);
    w.log_ratio[i] = h_d(ys, p);
  }
  w.product[0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const auto& nd = t.node(i);
    w.weight[i] = nd.fixed_spin != 0 ? 0.0 : h_deriv(w.log_ratio[i], p);
    w.product[i] = w.product[nd.parent] * w.weight[i];
  }
  return w;
}

/// Trees and weights for every active root under a resolved boundary.
struct SawForest {
  ResolvedBoundary boundary;
  std::vector<SawTree> trees;      // indexed by vertex; empty for inactive vertices
  std::vector<SawWeights> weights;
  std::vector<Vertex> active;
};

inline SawForest saw_forest(const Graph& g, const GibbsParams& p, const Boundary& b,
                            CycleSpinRule rule = default_cycle_rule, bool with_weights = true) {
  SawForest f;
  f.boundary = resolve_boundary(g, p, b);
  f.active = f.boundary.active();
  f.trees.resize(static_cast<std::size_t>(g.num_vertices()));
  f.weights.resize(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex w : f.active) {
    f.trees[w] = saw_tree_pinned(g, w, f.boundary.pins, rule);
    if (with_weights) f.weights[w] = saw_weights(f.trees[w], p);
  }
  return f;
}

/// Influence matrix from the walk trees: entry (w, v) sums the weight
/// products over the copies of v in the tree of w. Rows of vertices that the
/// boundary forces to -1 are unit rows.
inline LabeledMatrix influence_saw(const Graph& g, const GibbsParams& p, const Boundary& b,
                                   CycleSpinRule rule = default_cycle_rule) {
  const auto f = saw_forest(g, p, b, rule);
  const auto labels = vertex_labels(f.boundary.free);
  LabeledMatrix inf(labels, labels);
  std::vector<int> col(static_cast<std::size_t>(g.num_vertices()), -1);
  for (int j = 0; j < inf.cols(); ++j) col[f.boundary.free[j]] = j;
  for (int i = 0; i < inf.rows(); ++i) {
    const Vertex w = f.boundary.free[i];
    inf(i, i) = 1.0;
    if (f.boundary.is_forced(w)) continue;
    const auto& t = f.trees[w];
    const auto& wt = f.weights[w];
    for (int k = 1; k < t.size(); ++k) {
      const auto& nd = t.node(k);
      if (nd.fixed_spin != 0 || col[nd.vertex] < 0) continue;
      inf(i, col[nd.vertex]) += wt.product[k];
    }
  }
  return inf;
}

/// Oriented edges with both ends unpinned, lexicographic.
inline std::vector<Label> free_edge_labels(const Graph& g, const std::vector<int>& pins) {
  std::vector<Label> out;
  for (const auto& e : oriented_edges(g))
    if (pins[e.tail] == 0 && pins[e.head] == 0) out.push_back({e.tail, e.head});
  return out;
}

/// Walk-tree matrices on oriented edges, indexed by walk length.
struct EdgePathMatrices {
  std::vector<Label> labels;
  std::vector<Eigen::MatrixXd> sums;    // [l] = S_l; index 0 unused
  std::vector<Eigen::MatrixXd> counts;  // [l] = |C(uz, l)|; index 0 unused
};

/// For each (ws, uz) and l, walks the copies of uz at depth l in T(ws):
/// copies are nodes of u whose parent copies z, excluding walks that close a
/// cycle. Rows with w == u stay zero.
inline EdgePathMatrices edge_path_matrices(const Graph& g, const SawForest& f,
                                           bool with_sums = true) {
  EdgePathMatrices out;
  out.labels = free_edge_labels(g, f.boundary.pins);
  const int m = static_cast<int>(out.labels.size());
  const int n = g.num_vertices();
  std::map<Label, int> pos;
  for (int i = 0; i < m; ++i) pos[out.labels[i]] = i;
  out.sums.assign(static_cast<std::size_t>(std::max(n, 1)), Eigen::MatrixXd::Zero(m, m));
  out.counts.assign(static_cast<std::size_t>(std::max(n, 1)), Eigen::MatrixXd::Zero(m, m));
  for (Vertex w : f.active) {
    const auto& t = f.trees[w];
    for (int k = 1; k < t.size(); ++k) {
      const auto& nd = t.node(k);
      if (nd.closes_cycle || nd.fixed_spin != 0 || nd.vertex == w) continue;
      const Vertex s = t.walk(k)[1];
      const Vertex z = t.node(nd.parent).vertex;
      const auto row = pos.find({w, s});
      const auto col = pos.find({nd.vertex, z});
      if (row == pos.end() || col == pos.end()) continue;
      out.counts[nd.depth](row->second, col->second) += 1.0;
      if (with_sums) out.sums[nd.depth](row->second, col->second) += f.weights[w].product[k];
    }
  }
  return out;
}

/// S_l on oriented edges between unpinned vertices, for a boundary resolved
/// against p.
inline LabeledMatrix s_ell_matrix(const Graph& g, const GibbsParams& p, const Boundary& b,
                                  int ell, CycleSpinRule rule = default_cycle_rule) {
  if (ell < 1) throw PreconditionError("walk length must be at least 1");
  const auto f = saw_forest(g, p, b, rule);
  const auto e = edge_path_matrices(g, f);
  if (ell >= static_cast<int>(e.sums.size())) return {e.labels, e.labels};
  return {e.labels, e.labels, e.sums[ell]};
}

/// E^{theta,l}(ws, uz) = |C(uz, l)| theta^l. Only the pinned set of b is used.
inline LabeledMatrix e_matrix(const Graph& g, const Boundary& b, double theta, int ell) {
  if (ell < 1) throw PreconditionError("walk length must be at least 1");
  SawForest f;
  f.boundary.pins = b.dense(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (f.boundary.pins[v] == 0) f.boundary.free.push_back(v);
  f.active = f.boundary.free;
  f.trees.resize(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex w : f.active) f.trees[w] = saw_tree_pinned(g, w, f.boundary.pins);
  const auto e = edge_path_matrices(g, f, false);
  if (ell >= static_cast<int>(e.counts.size())) return {e.labels, e.labels};
  return {e.labels, e.labels, e.counts[ell] * std::pow(theta, ell)};
}

/// J = sum over l of S_l.
inline LabeledMatrix j_matrix(const Graph& g, const GibbsParams& p, const Boundary& b,
                              CycleSpinRule rule = default_cycle_rule) {
  const auto f = saw_forest(g, p, b, rule);
  const auto e = edge_path_matrices(g, f);
  LabeledMatrix j(e.labels, e.labels);
  for (std::size_t l = 1; l < e.sums.size(); ++l) j.entries() += e.sums[l];
  return j;
}

/// K(r, vx) = 1{r = v} and C(xv, r) = 1{x = r} between `vertices` and the
/// pair labels `pairs`.
struct KCMatrices {
  LabeledMatrix k;
  LabeledMatrix c;
};

inline KCMatrices kc_matrices(const std::vector<Vertex>& vertices,
                              const std::vector<Label>& pairs) {
  const auto vl = vertex_labels(vertices);
  KCMatrices out{LabeledMatrix(vl, pairs), LabeledMatrix(pairs, vl)};
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    for (int j = 0; j < static_cast<int>(pairs.size()); ++j)
      if (pairs[j].first == vertices[i]) {
        out.k(i, j) = 1.0;
        out.c(j, i) = 1.0;
      }
  return out;
}

inline KCMatrices kc_matrices(const Graph& g, const Boundary& b) {
  const auto pins = b.dense(g.num_vertices());
  std::vector<Vertex> fr;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (pins[v] == 0) fr.push_back(v);
  return kc_matrices(fr, free_edge_labels(g, pins));
}

/// max |I - (Id + K J C)| with I the given influence matrix over the
/// unpinned vertices of b.
inline double path_decomposition_residual(const Graph& g, const GibbsParams& p,
                                          const Boundary& b, const LabeledMatrix& inf,
                                          CycleSpinRule rule = default_cycle_rule) {
  const auto f = saw_forest(g, p, b, rule);
  const auto e = edge_path_matrices(g, f);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(e.sums[0].rows(), e.sums[0].cols());
  for (std::size_t l = 1; l < e.sums.size(); ++l) j += e.sums[l];
  const auto kc = kc_matrices(f.boundary.free, e.labels);
  const Eigen::MatrixXd rhs =
      Eigen::MatrixXd::Identity(inf.rows(), inf.cols()) + kc.k.entries() * j * kc.c.entries();
  if (inf.row_labels() != kc.k.row_labels())
    throw PreconditionError("influence matrix rows do not match the unpinned vertices");
  return inf.rows() ? (inf.entries() - rhs).cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace specglauber

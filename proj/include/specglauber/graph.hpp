#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specglauber/errors.hpp"

namespace specglauber {

using Vertex = int;
using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

/// Directed copy of an undirected edge, tail -> head.
struct OrientedEdge {
  Vertex tail = 0;
  Vertex head = 0;

  constexpr OrientedEdge reverse() const noexcept { return {head, tail}; }
  constexpr auto operator<=>(const OrientedEdge&) const = default;
};

inline std::string to_string(const OrientedEdge& e) {
  return std::to_string(e.tail) + "-" + std::to_string(e.head);
}

/// Simple undirected graph on vertices 0..n-1. The vertex order used by every
/// ordering-dependent rule is the integer id order. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Throws GraphError on self-loops or out-of-range endpoints. Duplicate
  /// pairs (in either orientation) are merged.
  Graph(int n, std::span<const std::pair<Vertex, Vertex>> edge_list) : n_(n) {
    if (n < 0) throw GraphError("negative vertex count");
    edges_.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
      const std::string pair =
          "(" + std::to_string(u) + "," + std::to_string(v) + ")";
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw GraphError("edge " + pair + " has an endpoint outside [0," +
                         std::to_string(n) + ")");
      if (u == v) throw GraphError("edge " + pair + " is a self-loop");
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    connected_ = compute_connected();
  }

  Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edge_list)
      : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edge_list.begin(),
                                                            edge_list.size())) {}

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  /// Undirected edges as (u, v) with u < v, lexicographically sorted.
  const EdgeList& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return adj_[static_cast<std::size_t>(v)];
  }
  int degree(Vertex v) const noexcept {
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
  }
  int max_degree() const noexcept {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
  }
  int min_degree() const noexcept {
    if (adj_.empty()) return 0;
    int d = n_;
    for (const auto& nb : adj_) d = std::min(d, static_cast<int>(nb.size()));
    return d;
  }
  bool adjacent(Vertex u, Vertex v) const noexcept {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }
  bool connected() const noexcept { return connected_; }
  bool is_tree() const noexcept { return connected_ && num_edges() == n_ - 1; }
  bool is_regular() const noexcept { return max_degree() == min_degree(); }
  bool is_cycle() const noexcept {
    return connected_ && n_ >= 3 && max_degree() == 2 && min_degree() == 2;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  bool compute_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

  int n_ = 0;
  EdgeList edges_;
  std::vector<std::vector<Vertex>> adj_;
  bool connected_ = true;
};

inline Graph build_graph(int n, const EdgeList& edge_list) {
  return Graph(n, std::span<const std::pair<Vertex, Vertex>>(edge_list));
}

/// Both orientations of every edge, sorted by (tail, head).
inline std::vector<OrientedEdge> oriented_edges(const Graph& g) {
  std::vector<OrientedEdge> out;
  out.reserve(2 * static_cast<std::size_t>(g.num_edges()));
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u)) out.push_back({u, v});
  return out;
}

// ---------------------------------------------------------------------------
// Vertex-split extensions

/// Name of a vertex in an extended graph: an original vertex has
/// toward == -1; the split-vertex ws has base w and toward s.
struct SplitKey {
  Vertex base = 0;
  Vertex toward = -1;

  constexpr bool is_split() const noexcept { return toward >= 0; }
  constexpr auto operator<=>(const SplitKey&) const = default;
};

inline std::string to_string(const SplitKey& k) {
  return k.is_split() ? std::to_string(k.base) + "-" + std::to_string(k.toward)
                      : std::to_string(k.base);
}

/// A graph whose vertices carry SplitKeys. Vertex ids follow the sorted key
/// order, so the same set of splits always yields the same graph.
struct Extension {
  Graph graph;
  std::vector<SplitKey> keys;

  int index_of(SplitKey k) const {
    const auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k)
      throw PreconditionError("no vertex " + to_string(k) + " in extension");
    return static_cast<int>(it - keys.begin());
  }
  bool contains(SplitKey k) const {
    return std::binary_search(keys.begin(), keys.end(), k);
  }
  /// Ids of the split-vertices of original vertex w, ordered by toward.
  std::vector<int> split_vertices(Vertex w) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i].base == w && keys[i].is_split())
        out.push_back(static_cast<int>(i));
    return out;
  }
};

/// The trivial extension: G with every vertex labelled by itself.
inline Extension identity_extension(const Graph& g) {
  Extension e{g, {}};
  e.keys.reserve(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) e.keys.push_back({v, -1});
  return e;
}

/// Splits the (unsplit) original vertex w of an extension into one
/// split-vertex per neighbour; each split-vertex is adjacent only to the
/// neighbour it was created for.
inline Extension vertex_extension(const Extension& base, Vertex w) {
  const int wi = base.index_of({w, -1});
  std::vector<SplitKey> keys;
  for (std::size_t i = 0; i < base.keys.size(); ++i)
    if (static_cast<int>(i) != wi) keys.push_back(base.keys[i]);
  for (Vertex nb : base.graph.neighbors(wi)) keys.push_back({w, base.keys[nb].base});
  std::sort(keys.begin(), keys.end());

  Extension out{Graph{}, keys};
  EdgeList edges;
  for (auto [a, b] : base.graph.edges()) {
    SplitKey ka = base.keys[a], kb = base.keys[b];
    if (a == wi) ka = {w, kb.base};
    if (b == wi) kb = {w, ka.base};
    edges.emplace_back(out.index_of(ka), out.index_of(kb));
  }
  out.graph = build_graph(static_cast<int>(keys.size()), edges);
  return out;
}

inline Extension vertex_extension(const Graph& g, Vertex w) {
  if (w < 0 || w >= g.num_vertices())
    throw PreconditionError("vertex " + std::to_string(w) + " out of range");
  return vertex_extension(identity_extension(g), w);
}

/// The {u, w}-extension. Splitting order does not change the result.
inline Extension pair_extension(const Graph& g, Vertex u, Vertex w) {
  if (u == w)
    throw PreconditionError("pair extension needs distinct vertices, got " +
                            std::to_string(u) + " twice");
  return vertex_extension(vertex_extension(g, u), w);
}

}  // namespace specglauber

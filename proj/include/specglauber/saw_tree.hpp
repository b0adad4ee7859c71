#pragma once

#include <span>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/model.hpp"

namespace specglauber {

/// How a walk that closes a cycle is pinned.
///   literal:    -1 if the repeated vertex is larger than its predecessor
///               on the walk, else +1.
///   edge_order: let the walk leave the repeated vertex x through x -> a and
///               come back through b -> x; the leaf is +1 if b < a, else -1.
enum class CycleSpinRule { literal, edge_order };

inline constexpr CycleSpinRule default_cycle_rule = CycleSpinRule::edge_order;

struct SawNode {
  Vertex vertex = 0;
  int parent = -1;
  int depth = 0;
  int fixed_spin = 0;  // 0 = free, else the pinned spin
  bool closes_cycle = false;
  std::vector<int> children;
  std::size_t walk_begin = 0;
};

/// Tree of walks from a root vertex. Nodes are in DFS preorder; children
/// follow increasing neighbour order, so every parent precedes its children.
class SawTree {
 public:
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const SawNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<SawNode>& nodes() const noexcept { return nodes_; }
  static constexpr int root() noexcept { return 0; }

  /// Root vertex w.
  Vertex origin() const noexcept { return origin_; }
  /// For a subtree T(ws), the vertex s; -1 for a whole tree.
  Vertex origin_toward() const noexcept { return toward_; }

  std::span<const Vertex> walk(int i) const {
    const auto& nd = node(i);
    return {walks_.data() + nd.walk_begin, static_cast<std::size_t>(nd.depth + 1)};
  }

  /// Node i is a copy of the oriented edge uz: a copy of u whose parent is a
  /// copy of z.
  bool is_copy_of(int i, Vertex u, Vertex z) const {
    const auto& nd = node(i);
    return nd.vertex == u && nd.parent >= 0 && node(nd.parent).vertex == z;
  }

  std::string walk_string(int i) const {
    std::string s;
    for (Vertex v : walk(i)) {
      if (!s.empty()) s += ",";
      s += std::to_string(v);
    }
    return s;
  }

 private:
  friend SawTree saw_tree_pinned(const Graph&, Vertex, const std::vector<int>&,
                                 CycleSpinRule);
  friend SawTree saw_subtree(const SawTree&, Vertex);

  std::vector<SawNode> nodes_;
  std::vector<Vertex> walks_;
  Vertex origin_ = 0;
  Vertex toward_ = -1;
};

/// Tree from w where pins[v] != 0 pins v. Pinned vertices appear as
/// fixed-spin leaves and are not expanded.
inline SawTree saw_tree_pinned(const Graph& g, Vertex w, const std::vector<int>& pins,
                               CycleSpinRule rule = default_cycle_rule) {
  const int n = g.num_vertices();
  if (w < 0 || w >= n) throw PreconditionError("root " + std::to_string(w) + " out of range");
  if (static_cast<int>(pins.size()) != n)
    throw PreconditionError("pin vector size does not match the graph");
  if (pins[w] != 0)
    throw PreconditionError("root " + std::to_string(w) + " lies in the pinned region");

  SawTree t;
  t.origin_ = w;
  std::vector<Vertex> path{w};
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  pos[w] = 0;

  auto add = [&](Vertex v, int parent, int spin, bool cycle) {
    SawNode nd;
    nd.vertex = v;
    nd.parent = parent;
    nd.depth = static_cast<int>(path.size()) - 1;
    nd.fixed_spin = spin;
    nd.closes_cycle = cycle;
    nd.walk_begin = t.walks_.size();
    t.walks_.insert(t.walks_.end(), path.begin(), path.end());
    const int id = static_cast<int>(t.nodes_.size());
    t.nodes_.push_back(std::move(nd));
    if (parent >= 0) t.nodes_[parent].children.push_back(id);
    return id;
  };

  auto grow = [&](auto&& self, int id) -> void {
    const Vertex x = path.back();
    const int r = static_cast<int>(path.size());  // index the child would take
    for (Vertex y : g.neighbors(x)) {
      const int j = pos[y];
      if (j >= 0) {
        if (j == r - 2) continue;  // immediate backtrack is not a walk step
        int spin;
        if (rule == CycleSpinRule::literal) {
          spin = (y > x) ? -1 : +1;
        } else {
          spin = (x < path[j + 1]) ? +1 : -1;
        }
        path.push_back(y);
        add(y, id, spin, true);
        path.pop_back();
        continue;
      }
      path.push_back(y);
      if (pins[y] != 0) {
        add(y, id, pins[y], false);
      } else {
        pos[y] = r;
        const int child = add(y, id, 0, false);
        self(self, child);
        pos[y] = -1;
      }
      path.pop_back();
    }
  };

  const int root = add(w, -1, 0, false);
  grow(grow, root);
  return t;
}

inline SawTree saw_tree(const Graph& g, Vertex w, const Boundary& b,
                        CycleSpinRule rule = default_cycle_rule) {
  if (b.contains(w))
    throw PreconditionError("root " + std::to_string(w) + " lies in the pinned region");
  return saw_tree_pinned(g, w, b.dense(g.num_vertices()), rule);
}

/// T(ws): the root, its child that copies s, and that child's descendants.
inline SawTree saw_subtree(const SawTree& tree, Vertex s) {
  int start = -1;
  for (int c : tree.node(SawTree::root()).children)
    if (tree.node(c).vertex == s) start = c;
  if (start < 0)
    throw PreconditionError("vertex " + std::to_string(s) +
                            " is not a child of the root " + std::to_string(tree.origin()));

  // Preorder keeps each subtree contiguous.
  int end = start + 1;
  while (end < tree.size() && tree.node(end).depth > 1) ++end;

  SawTree out;
  out.origin_ = tree.origin_;
  out.toward_ = s;
  auto copy = [&](int old_id, int parent) {
    SawNode nd = tree.node(old_id);
    nd.parent = parent;
    nd.children.clear();
    const auto w = tree.walk(old_id);
    nd.walk_begin = out.walks_.size();
    out.walks_.insert(out.walks_.end(), w.begin(), w.end());
    const int id = static_cast<int>(out.nodes_.size());
    out.nodes_.push_back(std::move(nd));
    if (parent >= 0) out.nodes_[parent].children.push_back(id);
    return id;
  };
  copy(SawTree::root(), -1);
  const int offset = start - 1;
  for (int i = start; i < end; ++i) {
    const int parent_old = tree.node(i).parent;
    copy(i, parent_old == SawTree::root() ? 0 : parent_old - offset);
  }
  return out;
}

}  // namespace specglauber

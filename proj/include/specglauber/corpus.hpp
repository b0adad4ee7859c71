#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/model.hpp"
#include "specglauber/rng.hpp"

namespace specglauber {

inline Graph path_graph(int n) {
  if (n < 1) throw PreconditionError("path needs at least one vertex");
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, e);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw PreconditionError("cycle needs at least three vertices");
  EdgeList e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, e);
}

inline Graph complete_graph(int n) {
  if (n < 1) throw PreconditionError("complete graph needs at least one vertex");
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return build_graph(n, e);
}

inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw PreconditionError("both sides need a vertex");
  EdgeList e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return build_graph(a + b, e);
}

/// rows x cols grid, vertex r * cols + c.
inline Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw PreconditionError("grid dimensions must be positive");
  EdgeList e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  return build_graph(rows * cols, e);
}

/// Star on n vertices, centre 0.
inline Graph star_graph(int n) {
  if (n < 2) throw PreconditionError("star needs at least two vertices");
  EdgeList e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return build_graph(n, e);
}

inline Graph petersen_graph() {
  EdgeList e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return build_graph(10, e);
}

/// Cycle on n vertices with the chord (0, n/2).
inline Graph cycle_with_chord(int n) {
  if (n < 4) throw PreconditionError("cycle with chord needs at least four vertices");
  EdgeList e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  e.emplace_back(0, n / 2);
  return build_graph(n, e);
}

/// Connected graph with n vertices and m edges: a random spanning tree plus
/// m - (n - 1) distinct random extra edges.
inline Graph random_connected(int n, int m, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("random graph needs at least one vertex");
  const long long max_m = static_cast<long long>(n) * (n - 1) / 2;
  if (m < n - 1 || m > max_m)
    throw PreconditionError("edge count " + std::to_string(m) + " impossible for a connected graph on " +
                            std::to_string(n) + " vertices");
  CounterRng rng(seed, 0x67726170);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  std::vector<std::vector<bool>> has(static_cast<std::size_t>(n), std::vector<bool>(n, false));
  EdgeList e;
  auto add = [&](int a, int b) {
    has[a][b] = has[b][a] = true;
    e.emplace_back(a, b);
  };
  for (int i = 1; i < n; ++i)
    add(order[i], order[rng.below(static_cast<std::uint64_t>(i))]);
  std::vector<std::pair<int, int>> rest;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!has[a][b]) rest.emplace_back(a, b);
  for (int k = 0; k < m - (n - 1); ++k) {
    const auto j = k + rng.below(rest.size() - static_cast<std::size_t>(k));
    std::swap(rest[k], rest[j]);
    add(rest[k].first, rest[k].second);
  }
  return build_graph(n, e);
}

/// Named graph from the corpus, e.g. "cycle:5", "grid:3x3", "complete_bipartite:2x3",
/// "random:8:10:7" (n, m, seed), "petersen".
inline Graph named_graph(const std::string& spec) {
  auto parts = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
      if (i == s.size() || s[i] == sep) {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    return out;
  };
  const auto tok = parts(spec, ':');
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw PreconditionError("bad number '" + s + "' in graph name '" + spec + "'");
    }
  };
  auto need = [&](std::size_t k) {
    if (tok.size() != k) throw PreconditionError("graph name '" + spec + "' has the wrong arity");
  };
  const auto& kind = tok[0];
  if (kind == "petersen") return need(1), petersen_graph();
  if (kind == "path") return need(2), path_graph(static_cast<int>(num(tok[1])));
  if (kind == "cycle") return need(2), cycle_graph(static_cast<int>(num(tok[1])));
  if (kind == "complete") return need(2), complete_graph(static_cast<int>(num(tok[1])));
  if (kind == "star") return need(2), star_graph(static_cast<int>(num(tok[1])));
  if (kind == "cycle_with_chord") return need(2), cycle_with_chord(static_cast<int>(num(tok[1])));
  if (kind == "grid" || kind == "complete_bipartite") {
    need(2);
    const auto d = parts(tok[1], 'x');
    if (d.size() != 2) throw PreconditionError("graph name '" + spec + "' needs AxB");
    const int a = static_cast<int>(num(d[0])), b = static_cast<int>(num(d[1]));
    return kind == "grid" ? grid_graph(a, b) : complete_bipartite(a, b);
  }
  if (kind == "random") {
    need(4);
    return random_connected(static_cast<int>(num(tok[1])), static_cast<int>(num(tok[2])),
                            static_cast<std::uint64_t>(num(tok[3])));
  }
  throw PreconditionError("unknown graph family '" + kind + "'");
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Small graphs used for exhaustive checks against enumeration.
inline std::vector<NamedGraph> small_corpus(std::uint64_t seed = 1) {
  std::vector<std::string> names;
  for (int n = 3; n <= 8; ++n) names.push_back("path:" + std::to_string(n));
  for (int n = 4; n <= 8; ++n) names.push_back("cycle:" + std::to_string(n));
  for (int n = 3; n <= 5; ++n) names.push_back("complete:" + std::to_string(n));
  names.push_back("complete_bipartite:2x3");
  names.push_back("star:5");
  names.push_back("grid:2x3");
  names.push_back("grid:3x3");
  names.push_back("cycle_with_chord:5");
  names.push_back("cycle_with_chord:6");
  CounterRng rng(seed, 0x636f7270);
  for (int i = 0; i < 10; ++i) {
    const int n = 5 + static_cast<int>(rng.below(4));
    const int m = n - 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n) / 2 + 1));
    names.push_back("random:" + std::to_string(n) + ":" + std::to_string(m) + ":" +
                    std::to_string(seed * 1000 + static_cast<std::uint64_t>(i)));
  }
  std::vector<NamedGraph> out;
  for (const auto& s : names) out.push_back({s, named_graph(s)});
  return out;
}

/// Larger graphs for spectral checks.
inline std::vector<NamedGraph> spectral_corpus(std::uint64_t seed = 1) {
  auto out = small_corpus(seed);
  for (const char* s : {"petersen", "complete_bipartite:3x3", "grid:4x4", "cycle:10",
                        "cycle_with_chord:10", "complete:6"})
    out.push_back({s, named_graph(s)});
  out.push_back({"random:12:18:" + std::to_string(seed), random_connected(12, 18, seed)});
  return out;
}

/// Random boundary: |region| uniform in [1, n - 2], uniform spins,
/// resampled until the conditioned support is nonempty under p.
inline Boundary random_boundary(const Graph& g, const GibbsParams& p, CounterRng& rng) {
  const int n = g.num_vertices();
  if (n < 3) return {};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n) - 2));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    Boundary b;
    for (int i = 0; i < k; ++i) b.pins[order[i]] = rng.below(2) ? 1 : -1;
    bool ok = true;
    if (p.beta == 0.0)
      for (auto [u, v] : g.edges())
        if (b.contains(u) && b.contains(v) && b.pins.at(u) == 1 && b.pins.at(v) == 1) ok = false;
    if (ok) return b;
  }
  throw SupportError("no boundary with nonempty support found");
}

}  // namespace specglauber

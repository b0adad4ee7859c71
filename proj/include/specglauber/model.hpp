#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"

namespace specglauber {

enum class ModelTag { ising, hardcore, general };

inline std::string to_string(ModelTag t) {
  switch (t) {
    case ModelTag::ising: return "ising";
    case ModelTag::hardcore: return "hardcore";
    case ModelTag::general: return "general";
  }
  return "unknown";
}

/// Two-spin specification: weight lambda^{#+} beta^{#++} gamma^{#--}.
struct GibbsParams {
  double beta = 1.0;
  double gamma = 1.0;
  double lambda = 1.0;
  ModelTag tag = ModelTag::general;

  static GibbsParams ising(double b) { return checked({b, b, 1.0, ModelTag::ising}); }
  static GibbsParams hardcore(double lam) {
    return checked({0.0, 1.0, lam, ModelTag::hardcore});
  }
  static GibbsParams general(double b, double g, double lam) {
    return checked({b, g, lam, ModelTag::general});
  }

  bool antiferromagnetic() const noexcept { return beta * gamma < 1.0; }
  bool ferromagnetic() const noexcept { return beta * gamma > 1.0; }

  std::string describe() const {
    switch (tag) {
      case ModelTag::ising: return "ising(beta=" + fmt(beta) + ")";
      case ModelTag::hardcore: return "hardcore(lambda=" + fmt(lambda) + ")";
      default:
        return "general(beta=" + fmt(beta) + ",gamma=" + fmt(gamma) +
               ",lambda=" + fmt(lambda) + ")";
    }
  }

 private:
  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
  }
  static GibbsParams checked(GibbsParams p) {
    if (!(p.gamma > 0.0) || !(p.lambda > 0.0) || !(p.beta >= 0.0) ||
        !std::isfinite(p.beta) || !std::isfinite(p.gamma) || !std::isfinite(p.lambda))
      throw PreconditionError("parameters need beta >= 0, gamma > 0, lambda > 0");
    if (p.beta > p.gamma && p.tag == ModelTag::general)
      throw PreconditionError("general parameters need beta <= gamma");
    return p;
  }
};

/// Pinned region and its spins. Keys of pins form the region.
struct Boundary {
  std::map<Vertex, int> pins;

  bool empty() const noexcept { return pins.empty(); }
  bool contains(Vertex v) const { return pins.count(v) != 0; }
  std::vector<Vertex> region() const {
    std::vector<Vertex> out;
    for (const auto& [v, s] : pins) out.push_back(v);
    return out;
  }

  /// Dense form: entry v is 0 for free vertices, else the pinned spin.
  std::vector<int> dense(int n) const {
    std::vector<int> out(static_cast<std::size_t>(n), 0);
    for (const auto& [v, s] : pins) {
      if (v < 0 || v >= n)
        throw PreconditionError("boundary pins vertex " + std::to_string(v) +
                                " outside the graph");
      if (s != 1 && s != -1)
        throw PreconditionError("boundary spin for vertex " + std::to_string(v) +
                                " must be +1 or -1");
      out[static_cast<std::size_t>(v)] = s;
    }
    return out;
  }

  std::string describe() const {
    if (pins.empty()) return "{}";
    std::string s = "{";
    for (const auto& [v, x] : pins) {
      if (s.size() > 1) s += ",";
      s += std::to_string(v) + ":" + (x > 0 ? "+" : "-");
    }
    return s + "}";
  }
};

using SpinConfig = std::vector<int>;

/// Boundary after resolving hard constraints. With beta = 0 a free vertex
/// next to a +1 pin can only take -1; such vertices are pinned to -1 here and
/// listed in `forced`. `pins` has one entry per vertex (0 = free).
struct ResolvedBoundary {
  std::vector<int> pins;
  std::vector<Vertex> forced;
  std::vector<Vertex> free;  // unpinned in the original boundary, ascending

  bool is_forced(Vertex v) const {
    return std::binary_search(forced.begin(), forced.end(), v);
  }
  /// Free vertices that are not forced.
  std::vector<Vertex> active() const {
    std::vector<Vertex> out;
    for (Vertex v : free)
      if (!is_forced(v)) out.push_back(v);
    return out;
  }
};

inline ResolvedBoundary resolve_boundary(const Graph& g, const GibbsParams& p,
                                         const Boundary& b) {
  ResolvedBoundary r;
  r.pins = b.dense(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (r.pins[v] == 0) r.free.push_back(v);
  if (p.beta != 0.0) return r;
  for (auto [u, v] : g.edges())
    if (r.pins[u] == 1 && r.pins[v] == 1)
      throw SupportError("boundary " + b.describe() +
                         " pins both ends of edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ") to +1; the conditioned support is empty");
  for (Vertex v : r.free)
    for (Vertex s : g.neighbors(v))
      if (r.pins[s] == 1) {
        r.forced.push_back(v);
        break;
      }
  for (Vertex v : r.forced) r.pins[v] = -1;
  return r;
}

}  // namespace specglauber

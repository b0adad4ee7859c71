#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/gibbs.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/matrix.hpp"
#include "specglauber/model.hpp"

namespace specglauber {

/// Spin given to a split-vertex wx of w that is not the free split ws.
///   literal:    +1 if w > x, else -1.
///   edge_order: +1 if x < s, else -1 (the splits before s are +1, after -1),
///               which is what splitting w one neighbour at a time produces.
enum class SplitPinRule { literal, edge_order };

/// Which difference defines an extended-influence entry.
///   influence:    nu_uz(+ | ws = +) - nu_uz(+ | ws = -)
///   literal_minus: nu_uz(+ | ws = +) - nu_uz(- | ws = -)
enum class ExtendedEntry { influence, literal_minus };

inline constexpr SplitPinRule default_split_rule = SplitPinRule::edge_order;

inline int split_pin(SplitPinRule rule, Vertex w, Vertex x, Vertex s) {
  if (rule == SplitPinRule::literal) return w > x ? 1 : -1;
  return x < s ? 1 : -1;
}

/// Split-vertex labels ws for every active w and neighbour s.
inline std::vector<Label> split_labels(const Graph& g, const std::vector<Vertex>& active) {
  std::vector<Label> out;
  for (Vertex w : active)
    for (Vertex s : g.neighbors(w)) out.push_back({w, s});
  return out;
}

namespace detail {

// Pins of an extension: original vertices keep the resolved pins, the split
// vertices of each split original follow the rule relative to its free split.
inline std::vector<int> extension_pins(const Extension& ext, const std::vector<int>& base,
                                       const std::map<Vertex, Vertex>& free_split,
                                       SplitPinRule rule) {
  std::vector<int> pins(ext.keys.size(), 0);
  for (std::size_t i = 0; i < ext.keys.size(); ++i) {
    const auto k = ext.keys[i];
    if (!k.is_split()) {
      pins[i] = base[k.base];
      continue;
    }
    const Vertex s = free_split.at(k.base);
    pins[i] = k.toward == s ? 0 : split_pin(rule, k.base, k.toward, s);
  }
  return pins;
}

}  // namespace detail

struct ExtendedInfluence {
  std::vector<Vertex> free;        // unpinned vertices of the original boundary
  std::vector<Vertex> active;      // those not forced by it
  LabeledMatrix h;                 // over split labels of active vertices
  LabeledMatrix n;                 // coefficient matrix of the decomposition
  int empty_supports = 0;          // (ws, uz) whose extension has no support
};

/// Extended influence by enumeration on every {ws, uz}-extension, together
/// with the coefficients N(ws, uz) built from the ws- and {ws, uz}-extension
/// marginals.
inline ExtendedInfluence extended_influence_exact(const Graph& g, const GibbsParams& p,
                                                  const Boundary& b,
                                                  SplitPinRule rule = default_split_rule,
                                                  ExtendedEntry entry = ExtendedEntry::influence,
                                                  int cap = default_enumeration_cap) {
  const auto rb = resolve_boundary(g, p, b);
  ExtendedInfluence out;
  out.free = rb.free;
  out.active = rb.active();
  const auto labels = split_labels(g, out.active);
  out.h = LabeledMatrix(labels, labels);
  out.n = LabeledMatrix(labels, labels);

  // ws-extension marginals: zeta_ws(+) and zeta_u(+) for every original u.
  std::map<Label, std::vector<double>> zeta;  // key ws -> plus[] over original ids
  std::map<Label, double> zeta_ws;
  for (Vertex w : out.active) {
    const auto ext = vertex_extension(g, w);
    for (Vertex s : g.neighbors(w)) {
      const auto pins = detail::extension_pins(ext, rb.pins, {{w, s}}, rule);
      const auto e = enumerate(ext.graph, p, pins, false, cap);
      if (e.empty_support)
        throw SupportError("split extension at " + std::to_string(w) + "-" +
                           std::to_string(s) + " has empty support");
      std::vector<double> plus(static_cast<std::size_t>(g.num_vertices()), 0.0);
      for (std::size_t i = 0; i < ext.keys.size(); ++i)
        if (!ext.keys[i].is_split()) plus[ext.keys[i].base] = e.plus[i];
      zeta[{w, s}] = std::move(plus);
      zeta_ws[{w, s}] = e.plus[ext.index_of({w, s})];
    }
  }

  auto nondegenerate = [](double q) { return q > 0.0 && q < 1.0; };
  for (Vertex w : out.active)
    for (Vertex u : out.active) {
      if (w == u) continue;
      const auto ext = pair_extension(g, w, u);
      for (Vertex s : g.neighbors(w))
        for (Vertex z : g.neighbors(u)) {
          const Label ws{w, s}, uz{u, z};
          const auto pins = detail::extension_pins(ext, rb.pins, {{w, s}, {u, z}}, rule);
          const auto e = enumerate(ext.graph, p, pins, true, cap);
          const int i = ext.index_of({w, s}), j = ext.index_of({u, z});
          double hval = 0.0, nu_ws = 0.0, nu_uz = 0.0;
          if (e.empty_support) {
            ++out.empty_supports;
          } else {
            nu_ws = e.plus[i];
            nu_uz = e.plus[j];
            if (nondegenerate(nu_ws)) {
              const double both = e.joint(e.free_index(i), e.free_index(j));
              const double given_plus = both / nu_ws;
              const double given_minus = (nu_uz - both) / (1.0 - nu_ws);
              hval = entry == ExtendedEntry::influence ? given_plus - given_minus
                                                       : given_plus - (1.0 - given_minus);
            }
          }
          out.h.at(ws, uz) = hval;

          const double zu = zeta.at(ws)[u], zw = zeta_ws.at(ws);
          double coeff = 0.0;
          if (nondegenerate(zu) && nondegenerate(zw) && !e.empty_support) {
            const double num = zu * (1.0 - zu) / (zw * (1.0 - zw)) * nu_ws * (1.0 - nu_ws);
            const double den = nu_uz * (1.0 - nu_uz);
            if (den > 0.0) coeff = num / den;
            else if (num > 0.0)
              throw DegenerateMarginalError(
                  "split-vertex " + to_string(uz) + " has a degenerate marginal in the " +
                      "extension of " + to_string(ws),
                  to_string(uz));
          }
          out.n.at(ws, uz) = coeff;
        }
    }
  return out;
}

/// max |I - (Id + K (H o N) C)| with I the given influence matrix over the
/// unpinned vertices.
inline double extended_decomposition_residual(const ExtendedInfluence& x,
                                              const LabeledMatrix& inf) {
  const auto& labels = x.h.row_labels();
  const auto vl = vertex_labels(x.free);
  if (inf.row_labels() != vl)
    throw PreconditionError("influence matrix rows do not match the unpinned vertices");
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vl.size()),
                                            static_cast<Eigen::Index>(labels.size()));
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) k(i, j) = labels[j].first == x.free[i] ? 1.0 : 0.0;
  const Eigen::MatrixXd hn = x.h.entries().cwiseProduct(x.n.entries());
  const Eigen::MatrixXd rhs =
      Eigen::MatrixXd::Identity(k.rows(), k.rows()) + k * hn * k.transpose();
  return k.rows() ? (inf.entries() - rhs).cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace specglauber

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/matrix.hpp"
#include "specglauber/model.hpp"
#include "specglauber/rng.hpp"

namespace specglauber {

inline constexpr int default_enumeration_cap = 22;

/// lambda^{#+} beta^{#++} gamma^{#--}, with 0^0 = 1.
inline double gibbs_weight(const Graph& g, const GibbsParams& p, const SpinConfig& sigma) {
  if (static_cast<int>(sigma.size()) != g.num_vertices())
    throw PreconditionError("configuration does not cover every vertex");
  int plus = 0, pp = 0, mm = 0;
  for (int s : sigma) plus += (s > 0);
  for (auto [u, v] : g.edges()) {
    pp += (sigma[u] > 0 && sigma[v] > 0);
    mm += (sigma[u] < 0 && sigma[v] < 0);
  }
  return std::pow(p.lambda, plus) * std::pow(p.beta, pp) * std::pow(p.gamma, mm);
}

/// Sums over all completions of a pinning. Weights are kept as logs and
/// rescaled by their maximum once, so large lambda or beta cannot overflow.
struct Enumeration {
  bool empty_support = true;
  double log_z = -std::numeric_limits<double>::infinity();
  std::vector<Vertex> free;    // enumerated vertices, ascending
  std::vector<double> plus;    // per vertex of the graph: P(v = +1)
  Eigen::MatrixXd joint;       // over `free`: P(v = +1, u = +1); empty unless requested

  int free_index(Vertex v) const {
    const auto it = std::lower_bound(free.begin(), free.end(), v);
    if (it == free.end() || *it != v) return -1;
    return static_cast<int>(it - free.begin());
  }

  /// P(u = +1 | w = +1) - P(u = +1 | w = -1); 0 when either conditioning
  /// event has probability 0.
  double influence(Vertex w, Vertex u) const {
    if (w == u) return 1.0;
    const int i = free_index(w), j = free_index(u);
    const double pw = plus[w];
    if (pw <= 0.0 || pw >= 1.0) return 0.0;
    const double both = joint(i, j);
    return both / pw - (plus[u] - both) / (1.0 - pw);
  }
  bool degenerate(Vertex v) const { return plus[v] <= 0.0 || plus[v] >= 1.0; }
};

inline Enumeration enumerate(const Graph& g, const GibbsParams& p, const std::vector<int>& pins,
                             bool with_pairs, int cap = default_enumeration_cap) {
  const int n = g.num_vertices();
  Enumeration out;
  for (Vertex v = 0; v < n; ++v)
    if (pins[v] == 0) out.free.push_back(v);
  const int k = static_cast<int>(out.free.size());
  if (k > cap)
    throw PreconditionError(std::to_string(k) + " free vertices exceed the enumeration cap of " +
                            std::to_string(cap));

  const double log_lambda = std::log(p.lambda);
  const double log_beta = p.beta > 0.0 ? std::log(p.beta) : 0.0;
  const double log_gamma = std::log(p.gamma);
  const bool hard = p.beta == 0.0;

  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) pos[out.free[i]] = i;

  const std::uint64_t total = std::uint64_t{1} << k;
  std::vector<double> lw(total, -std::numeric_limits<double>::infinity());
  double max_lw = -std::numeric_limits<double>::infinity();
  auto spin = [&](Vertex v, std::uint64_t mask) {
    return pos[v] >= 0 ? (((mask >> pos[v]) & 1u) ? 1 : -1) : pins[v];
  };
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    int plus = 0, pp = 0, mm = 0;
    for (Vertex v = 0; v < n; ++v) plus += spin(v, mask) > 0;
    for (auto [u, v] : g.edges()) {
      const int a = spin(u, mask), b = spin(v, mask);
      pp += (a > 0 && b > 0);
      mm += (a < 0 && b < 0);
    }
    if (hard && pp > 0) continue;
    lw[mask] = plus * log_lambda + pp * log_beta + mm * log_gamma;
    max_lw = std::max(max_lw, lw[mask]);
  }

  out.plus.assign(static_cast<std::size_t>(n), 0.0);
  for (Vertex v = 0; v < n; ++v)
    if (pins[v] > 0) out.plus[v] = 1.0;
  if (!std::isfinite(max_lw)) return out;
  out.empty_support = false;

  double z = 0.0;
  std::vector<double> m1(static_cast<std::size_t>(k), 0.0);
  if (with_pairs) out.joint = Eigen::MatrixXd::Zero(k, k);
  std::vector<int> bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!std::isfinite(lw[mask])) continue;
    const double w = std::exp(lw[mask] - max_lw);
    z += w;
    bits.clear();
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1u) bits.push_back(i);
    for (int i : bits) m1[i] += w;
    if (with_pairs)
      for (int i : bits)
        for (int j : bits) out.joint(i, j) += w;
  }
  out.log_z = max_lw + std::log(z);
  for (int i = 0; i < k; ++i) out.plus[out.free[i]] = m1[i] / z;
  if (with_pairs) out.joint /= z;
  return out;
}

struct ExactMarginals {
  double z = 0.0;
  double log_z = 0.0;
  std::vector<double> plus;  // P(v = +1) for every vertex; pinned vertices are 0 or 1
};

inline ExactMarginals partition_and_marginals(const Graph& g, const GibbsParams& p,
                                              const Boundary& b,
                                              int cap = default_enumeration_cap) {
  const auto e = enumerate(g, p, b.dense(g.num_vertices()), false, cap);
  if (e.empty_support)
    throw SupportError("boundary " + b.describe() + " leaves no configuration of positive weight");
  return {std::exp(e.log_z), e.log_z, e.plus};
}

/// Influence matrix over the unpinned vertices, by enumeration.
inline LabeledMatrix influence_matrix_exact(const Graph& g, const GibbsParams& p,
                                            const Boundary& b,
                                            int cap = default_enumeration_cap) {
  const auto e = enumerate(g, p, b.dense(g.num_vertices()), true, cap);
  if (e.empty_support)
    throw SupportError("boundary " + b.describe() + " leaves no configuration of positive weight");
  const auto labels = vertex_labels(e.free);
  LabeledMatrix inf(labels, labels);
  for (int i = 0; i < inf.rows(); ++i)
    for (int j = 0; j < inf.cols(); ++j) inf(i, j) = e.influence(e.free[i], e.free[j]);
  return inf;
}

struct SymmetrizeReport {
  std::optional<Vertex> degenerate_vertex;  // set when M is singular
  double asymmetry = 0.0;          // max |X - X^T| for X = M I M^{-1}
  double literal_asymmetry = 0.0;  // same for M^{-1} I M
  double radius = 0.0;             // rho(I) from the symmetric form
};

/// Conjugates the influence matrix by M = diag(sqrt(mu_v(+) mu_v(-))).
/// Symmetry holds for M I M^{-1}: the covariance identity gives
/// I(u,v) mu_u(+)mu_u(-) = I(v,u) mu_v(+)mu_v(-).
inline SymmetrizeReport symmetrize_check(const Graph& g, const GibbsParams& p,
                                         const Boundary& b,
                                         int cap = default_enumeration_cap) {
  const auto e = enumerate(g, p, b.dense(g.num_vertices()), true, cap);
  if (e.empty_support)
    throw SupportError("boundary " + b.describe() + " leaves no configuration of positive weight");
  SymmetrizeReport r;
  const int k = static_cast<int>(e.free.size());
  Eigen::VectorXd m(k);
  for (int i = 0; i < k; ++i) {
    const double q = e.plus[e.free[i]];
    m(i) = std::sqrt(q * (1.0 - q));
    if (!(m(i) > 0.0)) {
      r.degenerate_vertex = e.free[i];
      return r;
    }
  }
  Eigen::MatrixXd inf(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) inf(i, j) = e.influence(e.free[i], e.free[j]);
  const Eigen::MatrixXd x = m.asDiagonal() * inf * m.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd y = m.cwiseInverse().asDiagonal() * inf * m.asDiagonal();
  r.asymmetry = k ? (x - x.transpose()).cwiseAbs().maxCoeff() : 0.0;
  r.literal_asymmetry = k ? (y - y.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()),
                                                      Eigen::EigenvaluesOnly);
    r.radius = es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return r;
}

/// Spectral radius of an influence matrix over `rows`. Rows of forced
/// vertices are unit rows (their block contributes eigenvalue 1); the rest is
/// symmetrised with the marginals and solved as a symmetric problem.
inline double influence_radius(const LabeledMatrix& inf, const std::vector<double>& plus) {
  std::vector<int> keep;
  bool any_forced = false;
  for (int i = 0; i < inf.rows(); ++i) {
    const double q = plus[inf.row_labels()[i].first];
    if (q > 0.0 && q < 1.0) keep.push_back(i);
    else any_forced = true;
  }
  double rho = any_forced ? 1.0 : 0.0;
  const int k = static_cast<int>(keep.size());
  if (k == 0) return rho;
  Eigen::MatrixXd x(k, k);
  Eigen::VectorXd m(k);
  for (int a = 0; a < k; ++a) {
    const double q = plus[inf.row_labels()[keep[a]].first];
    m(a) = std::sqrt(q * (1.0 - q));
  }
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c) x(a, c) = m(a) * inf(keep[a], keep[c]) / m(c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return std::max(rho, es.eigenvalues().cwiseAbs().maxCoeff());
}

namespace detail {

// Calls f(pins) for every nonempty-or-empty proper boundary (Lambda != V).
template <class F>
void for_each_proper_boundary(int n, F&& f) {
  std::vector<int> pins(static_cast<std::size_t>(n));
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t region = 0; region < full; ++region) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if ((region >> v) & 1u) members.push_back(v);
    const std::uint64_t spins = std::uint64_t{1} << members.size();
    for (std::uint64_t t = 0; t < spins; ++t) {
      std::fill(pins.begin(), pins.end(), 0);
      for (std::size_t i = 0; i < members.size(); ++i)
        pins[members[i]] = ((t >> i) & 1u) ? 1 : -1;
      f(pins);
    }
  }
}

}  // namespace detail

/// Largest b such that every conditional marginal of a supported spin is at
/// least b. Exhaustive over proper boundaries for n <= exhaustive_max,
/// otherwise `samples` seeded random boundaries (plus the empty one).
inline double marginal_boundedness(const Graph& g, const GibbsParams& p,
                                   int exhaustive_max = 10, int samples = 1000,
                                   std::uint64_t seed = 0) {
  const int n = g.num_vertices();
  double best = 1.0;
  auto visit = [&](const std::vector<int>& pins) {
    const auto e = enumerate(g, p, pins, false, default_enumeration_cap);
    if (e.empty_support) return;
    for (Vertex v : e.free) {
      const double q = e.plus[v];
      if (q > 0.0) best = std::min(best, q);
      if (q < 1.0) best = std::min(best, 1.0 - q);
    }
  };
  if (n <= exhaustive_max) {
    detail::for_each_proper_boundary(n, visit);
    return best;
  }
  visit(std::vector<int>(static_cast<std::size_t>(n), 0));
  CounterRng rng(seed, 0x6d62);
  std::vector<int> pins(static_cast<std::size_t>(n));
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int s = 0; s < samples; ++s) {
    std::iota(order.begin(), order.end(), 0);
    const int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    for (int i = 0; i < size; ++i)
      std::swap(order[i], order[i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)))]);
    std::fill(pins.begin(), pins.end(), 0);
    for (int i = 0; i < size; ++i) pins[order[i]] = rng.below(2) ? 1 : -1;
    visit(pins);
  }
  return best;
}

/// Every conditional support over nonempty proper boundaries is connected
/// under single-spin flips.
inline bool total_connectivity_check(const Graph& g, const GibbsParams& p, int cap = 10) {
  const int n = g.num_vertices();
  if (n > cap)
    throw PreconditionError("total connectivity sweep is limited to " + std::to_string(cap) +
                            " vertices");
  if (p.beta > 0.0) return true;  // every configuration has positive weight
  bool ok = true;
  detail::for_each_proper_boundary(n, [&](const std::vector<int>& pins) {
    if (!ok) return;
    bool pinned_any = false;
    for (int s : pins) pinned_any |= s != 0;
    if (!pinned_any) return;
    std::vector<Vertex> fr;
    for (Vertex v = 0; v < n; ++v)
      if (pins[v] == 0) fr.push_back(v);
    const int k = static_cast<int>(fr.size());
    auto valid = [&](std::uint64_t mask) {
      auto spin = [&](Vertex v) {
        if (pins[v] != 0) return pins[v];
        const auto i = std::lower_bound(fr.begin(), fr.end(), v) - fr.begin();
        return ((mask >> i) & 1u) ? 1 : -1;
      };
      for (auto [u, v] : g.edges())
        if (spin(u) > 0 && spin(v) > 0) return false;
      return true;
    };
    const std::uint64_t total = std::uint64_t{1} << k;
    std::vector<char> in(total), seen(total, 0);
    std::uint64_t count = 0, start = total;
    for (std::uint64_t m = 0; m < total; ++m) {
      in[m] = valid(m);
      if (in[m]) {
        ++count;
        if (start == total) start = m;
      }
    }
    if (count == 0) return;  // empty support: nothing to connect
    std::vector<std::uint64_t> stack{start};
    seen[start] = 1;
    std::uint64_t reached = 1;
    while (!stack.empty()) {
      const auto m = stack.back();
      stack.pop_back();
      for (int i = 0; i < k; ++i) {
        const auto nb = m ^ (std::uint64_t{1} << i);
        if (in[nb] && !seen[nb]) {
          seen[nb] = 1;
          ++reached;
          stack.push_back(nb);
        }
      }
    }
    ok = reached == count;
  });
  return ok;
}

}  // namespace specglauber

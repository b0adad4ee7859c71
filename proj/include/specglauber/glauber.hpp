#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/gibbs.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/model.hpp"
#include "specglauber/parallel.hpp"
#include "specglauber/rng.hpp"

namespace specglauber {

inline constexpr std::size_t default_state_cap = std::size_t{1} << 16;
inline constexpr std::size_t default_dense_cap = 4096;

/// P(sigma_v = +1 | neighbours) = lam beta^k+ / (lam beta^k+ + gamma^k-).
inline double local_plus_probability(const Graph& g, const GibbsParams& p,
                                     const SpinConfig& sigma, Vertex v) {
  int kp = 0, km = 0;
  for (Vertex u : g.neighbors(v)) (sigma[u] > 0 ? kp : km)++;
  if (kp > 0 && p.beta == 0.0) return 0.0;
  // compare in logs: a = log(lam beta^kp), b = log(gamma^km)
  const double a = std::log(p.lambda) + (kp ? kp * std::log(p.beta) : 0.0);
  const double b = km * std::log(p.gamma);
  return 1.0 / (1.0 + std::exp(b - a));
}

struct ChainState {
  SpinConfig config;
  std::uint64_t step = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Start state: pins from the boundary, every free vertex -1. This is the
/// empty set for hard-core and all-minus for Ising, both always supported.
inline ChainState initial_state(const Graph& g, const Boundary& b, std::uint64_t seed,
                                std::uint64_t stream = 0) {
  ChainState s;
  s.config = b.dense(g.num_vertices());
  for (int& x : s.config)
    if (x == 0) x = -1;
  s.seed = seed;
  s.stream = stream;
  return s;
}

/// Free vertices of a boundary, ascending.
inline std::vector<Vertex> free_vertices(const Graph& g, const Boundary& b) {
  const auto pins = b.dense(g.num_vertices());
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (pins[v] == 0) out.push_back(v);
  return out;
}

/// One heat-bath update. The draws depend only on (seed, stream, step).
inline void glauber_step(const Graph& g, const GibbsParams& p, const std::vector<Vertex>& free,
                         ChainState& s) {
  ++s.step;
  if (free.empty()) return;
  CounterRng rng(s.seed, s.stream, 2 * s.step);
  const Vertex v = free[rng.below(free.size())];
  const double q = local_plus_probability(g, p, s.config, v);
  s.config[v] = rng.uniform() < q ? 1 : -1;
}

inline ChainState glauber_step(const Graph& g, const GibbsParams& p, const Boundary& b,
                               ChainState s) {
  glauber_step(g, p, free_vertices(g, b), s);
  return s;
}

/// Exact transition matrix on the conditioned support. States are bitmasks
/// over the free vertices (bit i = free[i] is +1), sorted ascending.
struct TransitionMatrix {
  std::vector<Vertex> free;
  std::vector<int> pins;
  std::vector<std::uint64_t> states;
  Eigen::SparseMatrix<double, Eigen::RowMajor> probs;
  Eigen::VectorXd pi;

  int size() const noexcept { return static_cast<int>(states.size()); }
  SpinConfig config(int i) const {
    SpinConfig c = pins;
    for (std::size_t k = 0; k < free.size(); ++k) c[free[k]] = ((states[i] >> k) & 1u) ? 1 : -1;
    return c;
  }
  std::uint64_t mask_of(const SpinConfig& c) const {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (c[free[k]] > 0) m |= std::uint64_t{1} << k;
    return m;
  }
  /// Index of a state, or -1 when it is outside the support.
  int index_of(std::uint64_t mask) const {
    const auto it = std::lower_bound(states.begin(), states.end(), mask);
    return it != states.end() && *it == mask ? static_cast<int>(it - states.begin()) : -1;
  }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(probs); }
};

inline TransitionMatrix transition_matrix(const Graph& g, const GibbsParams& p, const Boundary& b,
                                          std::size_t state_cap = default_state_cap) {
  TransitionMatrix tm;
  tm.pins = b.dense(g.num_vertices());
  tm.free = free_vertices(g, b);
  const int k = static_cast<int>(tm.free.size());
  if (k >= 63 || (std::uint64_t{1} << k) > 64 * state_cap)
    throw PreconditionError("state space of " + std::to_string(k) + " free vertices exceeds the cap");
  std::vector<double> logw;
  SpinConfig c = tm.pins;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    for (int i = 0; i < k; ++i) c[tm.free[i]] = ((m >> i) & 1u) ? 1 : -1;
    double lw = 0.0;
    bool ok = true;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (c[v] > 0) lw += std::log(p.lambda);
    for (auto [u, v] : g.edges()) {
      if (c[u] > 0 && c[v] > 0) {
        if (p.beta == 0.0) ok = false;
        else lw += std::log(p.beta);
      } else if (c[u] < 0 && c[v] < 0) {
        lw += std::log(p.gamma);
      }
    }
    if (!ok) continue;
    tm.states.push_back(m);
    logw.push_back(lw);
    if (tm.states.size() > state_cap)
      throw PreconditionError("support exceeds the state cap of " + std::to_string(state_cap));
  }
  if (tm.states.empty()) throw SupportError("boundary " + b.describe() + " has empty support");
  const int n = tm.size();
  const double mx = *std::max_element(logw.begin(), logw.end());
  tm.pi.resize(n);
  for (int i = 0; i < n; ++i) tm.pi(i) = std::exp(logw[i] - mx);
  tm.pi /= tm.pi.sum();

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (k + 1));
  for (int i = 0; i < n; ++i) {
    c = tm.config(i);
    double stay = 0.0;
    for (int f = 0; f < k; ++f) {
      const double q = local_plus_probability(g, p, c, tm.free[f]);
      const bool plus = (tm.states[i] >> f) & 1u;
      const double move = (plus ? 1.0 - q : q) / k;
      stay += (plus ? q : 1.0 - q) / k;
      if (move > 0.0) trip.emplace_back(i, tm.index_of(tm.states[i] ^ (std::uint64_t{1} << f)), move);
    }
    trip.emplace_back(i, i, k ? stay : 1.0);
  }
  tm.probs.resize(n, n);
  tm.probs.setFromTriplets(trip.begin(), trip.end());
  return tm;
}

struct ChainDiagnostics {
  double row_sum = 0.0;         // max |sum_j P(i,j) - 1|
  double detailed_balance = 0.0;  // max |pi_i P(i,j) - pi_j P(j,i)|
  double stationarity = 0.0;    // max |(pi P)_j - pi_j|
};

inline ChainDiagnostics chain_diagnostics(const TransitionMatrix& tm) {
  ChainDiagnostics d;
  const Eigen::VectorXd rows = tm.probs * Eigen::VectorXd::Ones(tm.size());
  d.row_sum = (rows.array() - 1.0).abs().maxCoeff();
  const Eigen::SparseMatrix<double, Eigen::RowMajor> t = tm.probs.transpose();
  for (int i = 0; i < tm.size(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(tm.probs, i); it; ++it)
      d.detailed_balance = std::max(
          d.detailed_balance, std::abs(tm.pi(i) * it.value() - tm.pi(it.col()) * t.coeff(i, it.col())));
  const Eigen::VectorXd flow = tm.probs.transpose() * tm.pi;
  d.stationarity = (flow - tm.pi).cwiseAbs().maxCoeff();
  return d;
}

struct SpectralGap {
  double second_eig = 0.0;  // second largest eigenvalue
  double min_eig = 0.0;
  double gap = 0.0;         // 1 - second_eig
};

/// Eigenvalues of the reversible chain through D^{1/2} P D^{-1/2}.
inline SpectralGap spectral_gap(const TransitionMatrix& tm,
                                std::size_t dense_cap = default_dense_cap) {
  const int n = tm.size();
  if (static_cast<std::size_t>(n) > dense_cap)
    throw PreconditionError("spectral gap uses a dense eigensolve; " + std::to_string(n) +
                            " states exceed the cap of " + std::to_string(dense_cap));
  SpectralGap out;
  if (n == 1) {
    out.second_eig = 0.0;
    out.min_eig = 1.0;
    out.gap = 1.0;
    return out;
  }
  const Eigen::VectorXd r = tm.pi.cwiseSqrt();
  Eigen::MatrixXd s = r.asDiagonal() * tm.dense() * r.cwiseInverse().asDiagonal();
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  out.second_eig = ev(n - 2);
  out.min_eig = ev(0);
  out.gap = 1.0 - out.second_eig;
  return out;
}

inline double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return 0.5 * (a - b).cwiseAbs().sum();
}

/// TV distance between P^t(start, .) and pi for t = 0..t_max.
inline std::vector<double> tv_curve(const TransitionMatrix& tm, int start, int t_max) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(tm.size());
  row(start) = 1.0;
  const Eigen::SparseMatrix<double, Eigen::RowMajor> pt = tm.probs.transpose();
  std::vector<double> out;
  for (int t = 0; t <= t_max; ++t) {
    out.push_back(total_variation(row, tm.pi));
    row = pt * row;
  }
  return out;
}

/// Smallest t with max over starts of TV(P^t(x, .), pi) <= threshold, by
/// repeated multiplication of the dense matrix.
inline long mixing_time_exact(const TransitionMatrix& tm, double threshold = 0.25,
                              long t_max = 1000000, std::size_t dense_cap = default_dense_cap) {
  if (threshold >= 1.0) return 0;
  const int n = tm.size();
  if (static_cast<std::size_t>(n) > dense_cap)
    throw PreconditionError("exact mixing time needs at most " + std::to_string(dense_cap) +
                            " states");
  const Eigen::MatrixXd p = tm.dense();
  Eigen::MatrixXd pt = Eigen::MatrixXd::Identity(n, n);
  const Eigen::RowVectorXd pi = tm.pi.transpose();
  for (long t = 0; t <= t_max; ++t) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, 0.5 * (pt.row(i) - pi).cwiseAbs().sum());
    if (worst <= threshold) return t;
    pt = pt * p;
  }
  throw ConvergenceError("mixing time exceeds the step cap", static_cast<double>(t_max));
}

struct EmpiricalTv {
  double tv = 0.0;          // empirical histogram vs exact pi
  double exact_tv = 0.0;    // TV of P^t(start, .) vs pi
  double tolerance = 0.0;   // 1/2 sum_i 3 sqrt(q_i (1 - q_i) / N), q = P^t(start, .)
  double bias = 0.0;        // expected histogram noise when P^t = pi, 1/2 sum sqrt(2 pi_i / (pi N))
  bool agrees() const { return std::abs(tv - exact_tv) <= tolerance; }
};

/// Runs `chains` independent chains for t steps from the initial state and
/// compares their final-state histogram with pi. Chain i draws from stream i.
inline EmpiricalTv empirical_tv(const Graph& g, const GibbsParams& p, const Boundary& b, int t,
                                long chains, std::uint64_t seed, int threads = 1,
                                std::size_t state_cap = default_state_cap) {
  if (chains <= 0) throw PreconditionError("need at least one chain");
  const auto tm = transition_matrix(g, p, b, state_cap);
  const auto free = tm.free;
  std::vector<int> final_state(static_cast<std::size_t>(chains));
  parallel_for(static_cast<std::size_t>(chains), threads, [&](std::size_t i) {
    auto s = initial_state(g, b, seed, i);
    for (int k = 0; k < t; ++k) glauber_step(g, p, free, s);
    final_state[i] = tm.index_of(tm.mask_of(s.config));
  });
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(tm.size());
  for (int s : final_state) {
    if (s < 0) throw SupportError("a chain left the support");
    hist(s) += 1.0;
  }
  hist /= static_cast<double>(chains);
  const int start = tm.index_of(tm.mask_of(initial_state(g, b, seed).config));
  Eigen::VectorXd q = Eigen::VectorXd::Zero(tm.size());
  q(start) = 1.0;
  const Eigen::SparseMatrix<double, Eigen::RowMajor> pt = tm.probs.transpose();
  for (int k = 0; k < t; ++k) q = pt * q;
  EmpiricalTv out;
  out.tv = total_variation(hist, tm.pi);
  out.exact_tv = total_variation(q, tm.pi);
  const double n = static_cast<double>(chains);
  for (int i = 0; i < tm.size(); ++i) {
    out.tolerance += 1.5 * std::sqrt(q(i) * (1.0 - q(i)) / n);
    out.bias += 0.5 * std::sqrt(2.0 * tm.pi(i) * (1.0 - tm.pi(i)) / (M_PI * n));
  }
  return out;
}

}  // namespace specglauber

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/model.hpp"
#include "specglauber/rng.hpp"

namespace specglauber {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// lambda * prod (beta x_i + 1) / (x_i + gamma) on [0, +inf]^d; x = +inf
/// contributes its limit beta.
inline double f_d(std::span<const double> xs, const GibbsParams& p) {
  double out = p.lambda;
  for (double x : xs) {
    if (x < 0.0) throw PreconditionError("f_d is defined on [0, +inf]");
    out *= std::isinf(x) ? p.beta : (p.beta * x + 1.0) / (x + p.gamma);
  }
  return out;
}

/// log((beta e^y + 1) / (e^y + gamma)) on the extended line, evaluated so
/// that neither large nor very negative y overflows.
inline double log_factor(double y, const GibbsParams& p) {
  if (y == inf) return p.beta > 0.0 ? std::log(p.beta) : -inf;
  if (y == -inf) return -std::log(p.gamma);
  if (y > 0.0) {
    const double e = std::exp(-y);
    return std::log(p.beta + e) - std::log1p(p.gamma * e);
  }
  const double e = std::exp(y);
  return std::log1p(p.beta * e) - std::log(e + p.gamma);
}

/// log lambda + sum_i log_factor(y_i): the log-ratio recursion.
inline double h_d(std::span<const double> ys, const GibbsParams& p) {
  double out = std::log(p.lambda);
  for (double y : ys) out += log_factor(y, p);
  return out;
}

/// Derivative of log_factor: -(1 - beta gamma) e^x / ((beta e^x + 1)(e^x + gamma)).
inline double h_deriv(double x, const GibbsParams& p) {
  const double a = 1.0 - p.beta * p.gamma;
  if (a == 0.0 || x == -inf) return 0.0;
  if (x == inf) return p.beta > 0.0 ? 0.0 : -a;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return -a * e / ((p.beta + e) * (1.0 + p.gamma * e));
  }
  const double e = std::exp(x);
  return -a * e / ((p.beta * e + 1.0) * (e + p.gamma));
}

struct LogRatioInterval {
  double lo = -inf;
  double hi = inf;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Range of log-ratios at a vertex with d children.
inline LogRatioInterval log_ratio_interval(int d, const GibbsParams& p) {
  const double a = p.beta > 0.0 ? std::log(p.lambda) + d * std::log(p.beta) : -inf;
  const double b = std::log(p.lambda) - d * std::log(p.gamma);
  if (d == 0) return {std::log(p.lambda), std::log(p.lambda)};
  return p.beta * p.gamma <= 1.0 ? LogRatioInterval{a, b} : LogRatioInterval{b, a};
}

/// Smallest interval containing every J_d for 1 <= d <= delta.
inline LogRatioInterval log_ratio_interval_union(int delta, const GibbsParams& p) {
  LogRatioInterval out{inf, -inf};
  for (int d = 1; d <= delta; ++d) {
    const auto j = log_ratio_interval(d, p);
    out.lo = std::min(out.lo, j.lo);
    out.hi = std::max(out.hi, j.hi);
  }
  return out;
}

/// sup |h|: closed forms for Ising (over the whole line) and hard-core (over
/// log-ratios below log lambda); otherwise a grid sweep of [-50, 50] refined
/// around its best point, together with the limits at +-inf.
inline double delta_contraction_sup(const GibbsParams& p) {
  if (p.tag == ModelTag::ising) return std::abs(p.beta - 1.0) / (p.beta + 1.0);
  if (p.tag == ModelTag::hardcore) return p.lambda / (1.0 + p.lambda);
  double best = std::max(std::abs(h_deriv(inf, p)), std::abs(h_deriv(-inf, p)));
  constexpr int n = 4096;
  double lo = -50.0, hi = 50.0;
  for (int round = 0; round < 6; ++round) {
    double arg = lo, val = -1.0;
    for (int i = 0; i <= n; ++i) {
      const double x = lo + (hi - lo) * i / n;
      const double v = std::abs(h_deriv(x, p));
      if (v > val) {
        val = v;
        arg = x;
      }
    }
    best = std::max(best, val);
    const double step = (hi - lo) / n;
    lo = arg - 2 * step;
    hi = arg + 2 * step;
  }
  return best;
}

/// Hard-core uniqueness threshold k^k / (k-1)^(k+1).
inline double lambda_c(double k) {
  if (!(k > 1.0)) throw PreconditionError("lambda_c needs k > 1");
  return std::exp(k * std::log(k) - (k + 1.0) * std::log(k - 1.0));
}

/// The z > 1 with lambda_c(z) = lam, by bisection on log lambda_c.
inline double delta_c(double lam) {
  if (!(lam > 0.0)) throw PreconditionError("delta_c needs lambda > 0");
  const double target = std::log(lam);
  auto g = [&](double z) { return z * std::log(z) - (z + 1.0) * std::log(z - 1.0) - target; };
  double lo = 1.0 + 1e-9, hi = 1e6;
  if (g(lo) < 0.0 || g(hi) > 0.0)
    throw ConvergenceError("lambda outside the bracket of delta_c", lam);
  for (int it = 0; it < 400 && hi - lo > 1e-12 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  if (hi - lo > 1e-12 * std::max(1.0, lo))
    throw ConvergenceError("delta_c bisection did not converge", hi - lo);
  return 0.5 * (lo + hi);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Ising interactions [(d-1+delta)/(d+1-delta), (d+1-delta)/(d-1+delta)].
inline Interval u_ising(double d, double delta) {
  if (!(d > 1.0) || !(delta > 0.0 && delta < 1.0))
    throw PreconditionError("u_ising needs d > 1 and 0 < delta < 1");
  return {(d - 1.0 + delta) / (d + 1.0 - delta), (d + 1.0 - delta) / (d - 1.0 + delta)};
}

// Hard-core potential and the quantities of its contraction analysis.

inline double hc_potential_chi(double y) {
  return y > 0.0 ? 1.0 / std::sqrt(1.0 + std::exp(-y)) : std::sqrt(std::exp(y) / (1.0 + std::exp(y)));
}

inline double hc_potential_psi(double y) {
  if (!(y > 0.0)) throw PreconditionError("psi is defined for y > 0");
  return 0.5 / std::sqrt(y * (1.0 + y));
}

/// lambda / (1 + x)^d and its derivative; d may be fractional.
inline double f_sym(double d, double x, double lam) { return lam * std::pow(1.0 + x, -d); }
inline double f_sym_deriv(double d, double x, double lam) {
  return -d * lam * std::pow(1.0 + x, -d - 1.0);
}

/// (1/d) * (psi(F(x)) / psi(x) * |F'(x)|)^s, with s = inf read as the limit
/// of the s-th root, i.e. this returns the base when s is infinite.
inline double xi(double s, double d, double x, double lam) {
  const double base = hc_potential_psi(f_sym(d, x, lam)) / hc_potential_psi(x) *
                      std::abs(f_sym_deriv(d, x, lam));
  if (std::isinf(s)) return base;
  return std::pow(base, s) / d;
}

/// The x in (0, lam) with x = lam / (1 + x)^d.
inline double sym_fixpoint(double d, double lam) {
  double lo = 0.0, hi = lam;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid < f_sym(d, mid, lam) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct PotentialParams {
  double s = 1.0;  // may be +inf
  double delta = 1.0;
  double c = 1.0;
};

inline double potential_exponent(double dc) {
  return 1.0 / (1.0 - 0.5 * (dc - 1.0) * std::log1p(1.0 / (dc - 1.0)));
}

/// (s0, delta0, c0) for the hard-core potential at fugacity lam.
inline PotentialParams hc_potential_params(double lam) {
  const double dc = delta_c(lam);
  if (!(dc > 1.0)) throw PreconditionError("hard-core potential needs delta_c > 1");
  return {potential_exponent(dc), 1.0 / dc, lam / (1.0 + lam)};
}

struct PotentialGrid {
  int delta_max = 3;          // degrees 1..delta_max are checked
  int points = 4096;          // log-spaced grid on (0, lambda]
  double x_min_ratio = 1e-9;  // grid starts at lambda * x_min_ratio
  int random_checks = 10000;  // multivariate spot checks
  std::uint64_t seed = 0;
  double tol = 1e-12;
};

struct PotentialWitness {
  int d = 0;
  double x = 0.0;
  double value = 0.0;  // Xi(s, d, x)
};

struct PotentialReport {
  PotentialParams params;
  double contraction_slack = inf;  // min over the grid of delta - Xi
  double boundedness_slack = 0.0;  // c - lambda/(1+lambda)
  double multivariate_max_ratio = 0.0;  // max lhs / rhs of the spot checks
  long grid_evaluations = 0;
  std::optional<PotentialWitness> witness;  // worst point when contraction fails
  bool contraction_pass = false;
  bool boundedness_pass = false;
  bool multivariate_pass = false;
  bool pass() const { return contraction_pass && boundedness_pass && multivariate_pass; }
};

/// Checks that the hard-core potential is an (s, delta, c)-potential:
/// boundedness in closed form, contraction on the symmetric reduction Xi over
/// a log grid (densified around near-violations), and the multivariate
/// inequality at random points.
inline PotentialReport verify_potential(const GibbsParams& p, const PotentialParams& pp,
                                        const PotentialGrid& grid = {}) {
  if (p.tag != ModelTag::hardcore)
    throw PreconditionError("verify_potential implements the hard-core potential only");
  const double lam = p.lambda;
  PotentialReport rep;
  rep.params = pp;

  rep.boundedness_slack = pp.c - lam / (1.0 + lam);
  rep.boundedness_pass = rep.boundedness_slack >= -grid.tol;

  PotentialWitness worst;
  auto probe = [&](int d, double x) {
    const double v = xi(pp.s, d, x, lam);
    const double budget = std::isinf(pp.s) ? 1.0 : pp.delta;
    ++rep.grid_evaluations;
    const double slack = budget - v;
    if (slack < rep.contraction_slack) {
      rep.contraction_slack = slack;
      worst = {d, x, v};
    }
    return slack;
  };
  const double l0 = std::log(lam * grid.x_min_ratio), l1 = std::log(lam);
  const int n = std::max(grid.points, 2);
  for (int d = 1; d <= grid.delta_max; ++d) {
    std::vector<int> close;
    for (int i = 0; i < n; ++i) {
      const double x = std::exp(l0 + (l1 - l0) * i / (n - 1));
      if (probe(d, x) < 1e-6) close.push_back(i);
    }
    probe(d, lam);
    probe(d, sym_fixpoint(d, lam));
    for (int i : close) {  // 4x denser around near-violations
      const double a = l0 + (l1 - l0) * std::max(i - 1, 0) / (n - 1);
      const double b = l0 + (l1 - l0) * std::min(i + 1, n - 1) / (n - 1);
      for (int k = 1; k < 8; ++k) probe(d, std::exp(a + (b - a) * k / 8));
    }
  }
  rep.contraction_pass = rep.contraction_slack >= -grid.tol;
  if (!rep.contraction_pass) rep.witness = worst;

  // Multivariate check of
  //   chi(H_d(y)) sum_j |h(y_j)|/chi(y_j) m_j <= delta^{1/s} ||m||_s.
  CounterRng rng(grid.seed, 0x706f74);
  bool ok = true;
  for (int t = 0; t < grid.random_checks; ++t) {
    const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(grid.delta_max)));
    std::vector<double> y(static_cast<std::size_t>(d)), m(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      y[j] = l0 + (l1 - l0) * rng.uniform();
      m[j] = rng.uniform();
    }
    const double hy = h_d(y, p);
    double lhs = 0.0;
    for (int j = 0; j < d; ++j)
      lhs += std::abs(h_deriv(y[j], p)) / hc_potential_chi(y[j]) * m[j];
    lhs *= hc_potential_chi(hy);
    double rhs;
    if (std::isinf(pp.s)) {
      rhs = *std::max_element(m.begin(), m.end());
    } else {
      double norm = 0.0;
      for (double v : m) norm += std::pow(v, pp.s);
      rhs = std::pow(pp.delta, 1.0 / pp.s) * std::pow(norm, 1.0 / pp.s);
    }
    if (rhs > 0.0) rep.multivariate_max_ratio = std::max(rep.multivariate_max_ratio, lhs / rhs);
    if (lhs > rhs * (1.0 + 1e-12) + grid.tol) ok = false;
  }
  rep.multivariate_pass = ok;
  return rep;
}

struct ThresholdRegimeReport {
  double delta_c = 0.0;
  double z = 0.0;            // largest z with (1 - z)/L >= 1/delta_c
  bool z_in_unit = false;    // 0 < z < 1
  double occupancy = 0.0;    // lambda / (1 + lambda)
  double e3_over_l = 0.0;
  bool occupancy_below = false;  // lambda/(1+lambda) < e^3/L
  bool lambda_c_below = false;   // lambda_c(L) <= e^3/L
  bool pass() const { return z_in_unit && occupancy_below && lambda_c_below; }
};

/// Requires 0 < lam <= (1 - eps) lambda_c(L).
inline ThresholdRegimeReport claim_15_2_check(double eps, double L, double lam) {
  if (!(eps > 0.0 && eps < 1.0) || !(L >= 2.0))
    throw PreconditionError("claim check needs 0 < eps < 1 and L >= 2");
  const double limit = (1.0 - eps) * lambda_c(L);
  if (!(lam > 0.0) || lam > limit * (1.0 + 1e-12))
    throw PreconditionError("lambda must lie in (0, (1 - eps) lambda_c(L)]");
  ThresholdRegimeReport r;
  r.delta_c = delta_c(lam);
  r.z = 1.0 - L / r.delta_c;
  r.z_in_unit = r.z > 0.0 && r.z < 1.0;
  r.occupancy = lam / (1.0 + lam);
  r.e3_over_l = std::exp(3.0) / L;
  r.occupancy_below = r.occupancy < r.e3_over_l;
  r.lambda_c_below = lambda_c(L) <= r.e3_over_l;
  return r;
}

}  // namespace specglauber

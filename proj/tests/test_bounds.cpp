#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "specglauber/bounds.hpp"
#include "specglauber/corpus.hpp"

using namespace specglauber;

namespace {

// rho(I) straight from conditional marginals and a general eigensolver.
double oracle_radius(const Graph& g, const GibbsParams& p, const Boundary& b) {
  const auto pins = b.dense(g.num_vertices());
  std::vector<Vertex> fr;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (pins[v] == 0) fr.push_back(v);
  Eigen::MatrixXd m(fr.size(), fr.size());
  for (std::size_t i = 0; i < fr.size(); ++i)
    for (std::size_t j = 0; j < fr.size(); ++j)
      m(i, j) = oracle::influence(g, p, pins, fr[i], fr[j]);
  return oracle::max_modulus(m);
}

std::vector<Boundary> some_boundaries(const Graph& g, const GibbsParams& p) {
  std::vector<Boundary> out{Boundary{}};
  CounterRng rng(5, 3);
  for (int i = 0; i < 4 && g.num_vertices() >= 3; ++i) out.push_back(random_boundary(g, p, rng));
  return out;
}

}  // namespace

TEST(BoundIds, RoundTrip) {
  for (BoundId id : all_bounds()) EXPECT_EQ(parse_bound_id(to_string(id)), id);
  EXPECT_THROW(parse_bound_id("THM_9_9"), PreconditionError);
}

TEST(Bounds, AdjacencyContractionOnK4) {
  const auto g = complete_graph(4);
  const auto w = u_ising(3.0, 0.2);
  for (double beta : {w.lo, std::sqrt(w.lo * w.hi), w.hi}) {
    const auto p = GibbsParams::ising(beta);
    const auto r = verify_bound(BoundId::thm_5_2, g, p, {}, 0.2);
    ASSERT_EQ(r.status, BoundStatus::pass) << r.reason;
    EXPECT_DOUBLE_EQ(r.rhs, 5.0);
    EXPECT_NEAR(r.lhs, oracle_radius(g, p, {}), 1e-9);
  }
}

TEST(Bounds, AdjacencyPremiseOutsideWindowSkips) {
  const auto r = verify_bound(BoundId::thm_5_2, complete_graph(4), GibbsParams::ising(3.0), {}, 0.2);
  EXPECT_EQ(r.status, BoundStatus::skip);
  EXPECT_EQ(r.reason, "contraction_premise");
}

TEST(Bounds, ReducibleHashimotoSkips) {
  const auto r = verify_bound(BoundId::thm_5_3, cycle_graph(4), GibbsParams::ising(0.9), {}, 0.2);
  EXPECT_EQ(r.status, BoundStatus::skip);
  EXPECT_EQ(r.reason, "hashimoto_reducible");
}

TEST(Bounds, NonBacktrackingContractionOnCorpus) {
  for (const auto& [name, g] : small_corpus()) {
    if (!hashimoto_irreducible(g)) continue;
    const double theta = hashimoto_spectrum(g).theta();
    for (double eps : {0.1, 0.5}) {
      const auto w = u_ising(theta, eps);
      for (double beta : {w.lo, w.hi}) {
        const auto p = GibbsParams::ising(beta);
        const auto setup = prepare_bound(BoundId::thm_5_3, g, p, eps);
        ASSERT_FALSE(setup.skip) << name << " " << setup.reason;
        for (const auto& b : some_boundaries(g, p)) {
          const auto r = evaluate_bound(setup, g, p, b);
          EXPECT_EQ(r.status, BoundStatus::pass) << name << " " << r.instance;
        }
      }
    }
  }
}

TEST(Bounds, InfluenceRadiusMatchesGeneralEigensolver) {
  for (const auto& [name, g] : small_corpus()) {
    if (g.num_vertices() > 7) continue;
    for (const auto& p : {GibbsParams::ising(0.7), GibbsParams::hardcore(1.0)})
      for (const auto& b : some_boundaries(g, p)) {
        const auto e = enumerate(g, p, b.dense(g.num_vertices()), true);
        if (e.empty_support) continue;
        const auto inf = influence_matrix_exact(g, p, b);
        EXPECT_NEAR(influence_radius(inf, e.plus), oracle_radius(g, p, b), 1e-8) << name;
      }
  }
}

TEST(Bounds, ExtendedIdentityOnTriangle) {
  const auto g = complete_graph(3);
  const auto p = GibbsParams::hardcore(0.5);
  for (const auto& b : {Boundary{}, Boundary{{{0, -1}}}, Boundary{{{0, 1}}}}) {
    const auto r = verify_bound(BoundId::thm_11_2, g, p, b, 0.2);
    EXPECT_EQ(r.status, BoundStatus::pass) << r.instance << " residual " << r.lhs;
  }
}

TEST(Bounds, WalkCountBoundWithIdentityWeights) {
  const auto g = cycle_with_chord(5);
  const auto p = GibbsParams::hardcore(0.3);
  BoundOptions opt;
  opt.weights = EdgeWeights::identity;
  for (const auto& b : some_boundaries(g, p)) {
    const auto r = verify_bound(BoundId::thm_8_1, g, p, b, 0.2, opt);
    ASSERT_NE(r.status, BoundStatus::fail) << r.instance;
    EXPECT_EQ(r.details.at("kappa_weights"), 0.0);
  }
}

TEST(Bounds, WalkCountBoundWithKappaWeights) {
  for (const char* name : {"complete:4", "petersen", "cycle_with_chord:6"}) {
    const auto g = named_graph(name);
    for (const auto& p : {GibbsParams::ising(0.6), GibbsParams::hardcore(0.5)}) {
      const auto r = verify_bound(BoundId::thm_8_1, g, p, {}, 0.2);
      EXPECT_EQ(r.status, BoundStatus::pass) << name << " " << r.lhs << " > " << r.rhs;
    }
  }
}

TEST(Bounds, HardcoreAdjacencyPotentialBound) {
  for (const char* name : {"complete:4", "cycle_with_chord:6", "grid:3x3"}) {
    const auto g = named_graph(name);
    const double rho = adjacency_radius(g);
    for (double eps : {0.2, 0.5}) {
      const auto p = GibbsParams::hardcore((1.0 - eps) * lambda_c(rho));
      const auto setup = prepare_bound(BoundId::thm_5_5, g, p, eps);
      ASSERT_FALSE(setup.skip) << name << " " << setup.reason;
      EXPECT_GT(setup.rhs, 1.0);
      EXPECT_NEAR(setup.details.at("eps_effective"), 1.0 - rho / delta_c(p.lambda), 1e-12);
      const auto r = evaluate_bound(setup, g, p, {});
      EXPECT_EQ(r.status, BoundStatus::pass) << name << " " << r.lhs << " > " << r.rhs;
    }
  }
}

TEST(Bounds, PotentialBoundNeedsHardcore) {
  const auto r = verify_bound(BoundId::thm_5_5, complete_graph(4), GibbsParams::ising(0.9), {}, 0.2);
  EXPECT_EQ(r.reason, "potential_unavailable");
}

TEST(Bounds, EmptySupportSkips) {
  const auto g = path_graph(3);
  const auto r = verify_bound(BoundId::thm_5_2, g, GibbsParams::hardcore(0.1),
                              Boundary{{{0, 1}, {1, 1}}}, 0.2);
  EXPECT_EQ(r.status, BoundStatus::skip);
}

TEST(WalkMatrices, ESymmetricAndDominatesS) {
  for (const auto& [name, g] : small_corpus()) {
    if (g.num_vertices() > 7) continue;
    const auto p = GibbsParams::ising(0.6);
    const double delta = delta_contraction_sup(p);
    for (const auto& b : some_boundaries(g, p))
      for (int ell = 1; ell < g.num_vertices(); ++ell) {
        const auto e = e_matrix(g, b, delta, ell);
        if (e.rows() == 0) continue;
        EXPECT_EQ((e.entries() - e.entries().transpose()).cwiseAbs().maxCoeff(), 0.0)
            << name << " l=" << ell;
        const auto s = s_ell_matrix(g, p, b, ell);
        ASSERT_EQ(s.row_labels(), e.row_labels());
        EXPECT_LE((s.entries().cwiseAbs() - e.entries()).maxCoeff(), 1e-12) << name;
      }
  }
}

TEST(WalkMatrices, WeightedNormExamples) {
  const std::vector<Label> l{{0, 1}, {1, 0}};
  LabeledMatrix x(l, l);
  x(0, 1) = 2.0;
  x(1, 0) = -1.0;
  EXPECT_DOUBLE_EQ(weighted_inf_norm(x, Eigen::Vector2d(1.0, 1.0)), 2.0);
  // D^{-1} X D with d = (1, 4): entries 8 and -1/4
  EXPECT_DOUBLE_EQ(weighted_inf_norm(x, Eigen::Vector2d(1.0, 4.0)), 8.0);
  EXPECT_THROW(weighted_inf_norm(x, Eigen::Vector2d(1.0, 0.0)), PreconditionError);
}

TEST(WalkMatrices, KRowsCountFreeNeighbours) {
  for (const auto& [name, g] : small_corpus()) {
    const auto p = GibbsParams::ising(0.6);
    for (const auto& b : some_boundaries(g, p)) {
      const auto kc = kc_matrices(g, b);
      const Eigen::MatrixXd kk = kc.k.entries() * kc.k.entries().transpose();
      EXPECT_EQ(kc.c.entries(), kc.k.entries().transpose());
      for (int i = 0; i < kk.rows(); ++i)
        EXPECT_LE(kk(i, i), g.degree(kc.k.row_labels()[i].first)) << name;
    }
  }
}

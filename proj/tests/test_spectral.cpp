#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "oracles.hpp"
#include "specglauber/corpus.hpp"
#include "specglauber/spectral.hpp"

using namespace specglauber;

TEST(Adjacency, SmallExamples) {
  const auto a = adjacency_matrix(path_graph(2));
  EXPECT_EQ(a.entries(), (Eigen::Matrix2d() << 0, 1, 1, 0).finished());
  const auto k4 = adjacency_matrix(complete_graph(4));
  EXPECT_EQ(k4.entries(), Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4));
}

TEST(Adjacency, PowersCountWalks) {
  for (const char* name : {"petersen", "grid:2x3", "cycle_with_chord:5", "star:5"}) {
    const auto g = named_graph(name);
    const Eigen::MatrixXd a = adjacency_matrix(g).entries();
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    for (int ell = 1; ell <= 5; ++ell) {
      p = p * a;
      for (Vertex u = 0; u < g.num_vertices(); ++u)
        for (Vertex w = 0; w < g.num_vertices(); ++w)
          ASSERT_EQ(p(u, w), oracle::walk_count(g, u, w, ell)) << name << " l=" << ell;
    }
  }
}

TEST(Hashimoto, ContinuationsOnly) {
  EXPECT_EQ(hashimoto_matrix(path_graph(2)).entries().sum(), 0.0);
  const auto h = hashimoto_matrix(complete_graph(4));
  EXPECT_EQ(h.rows(), 12);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(h.entries().row(i).sum(), 2.0);
  const auto p3 = hashimoto_matrix(path_graph(3));
  EXPECT_EQ(p3.entries().sum(), 2.0);
  EXPECT_EQ(p3.at({0, 1}, {1, 2}), 1.0);
  EXPECT_EQ(p3.at({2, 1}, {1, 0}), 1.0);
}

TEST(Perron, KnownRadii) {
  EXPECT_NEAR(perron(adjacency_matrix(complete_graph(4))).radius, 3.0, 1e-10);
  EXPECT_NEAR(perron(adjacency_matrix(path_graph(3))).radius, std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(perron(hashimoto_matrix(complete_graph(4))).radius, 2.0, 1e-10);
}

TEST(Perron, MatchesDenseEigensolverOnCorpus) {
  for (const auto& [name, g] : spectral_corpus()) {
    const auto a = adjacency_matrix(g);
    EXPECT_NEAR(perron(a).radius, oracle::max_modulus(a.entries()), 1e-8) << name;
    if (hashimoto_irreducible(g)) {
      const auto h = hashimoto_matrix(g);
      const auto r = perron(h);
      EXPECT_NEAR(r.radius, oracle::max_modulus(h.entries()), 1e-8) << name;
      EXPECT_GT(r.right_vec.minCoeff(), 0.0);
      EXPECT_GT(r.left_vec.minCoeff(), 0.0);
      EXPECT_NEAR(r.right_vec.sum(), 1.0, 1e-12);
      EXPECT_LE((h.entries() * r.right_vec - r.radius * r.right_vec).cwiseAbs().maxCoeff(),
                r.residual + 1e-14);
    }
  }
}

TEST(Perron, ReducibleInputReportsComponents) {
  try {
    perron(hashimoto_matrix(cycle_graph(4)));
    FAIL() << "expected ReducibleError";
  } catch (const ReducibleError& e) {
    EXPECT_EQ(e.components().size(), 2u);
  }
}

TEST(Hashimoto, Irreducibility) {
  EXPECT_FALSE(hashimoto_irreducible(cycle_graph(4)));
  EXPECT_TRUE(hashimoto_irreducible(complete_graph(4)));
  EXPECT_FALSE(hashimoto_irreducible(path_graph(3)));
  EXPECT_TRUE(hashimoto_irreducible(petersen_graph()));
  EXPECT_FALSE(hashimoto_irreducible(star_graph(5)));
}

TEST(Hashimoto, RadiusBelowAdjacencyRadius) {
  for (const auto& [name, g] : spectral_corpus()) {
    const double rho = adjacency_radius(g);
    EXPECT_GE(rho, std::sqrt(g.max_degree()) - 1e-9) << name;
    EXPECT_LE(rho, g.max_degree() + 1e-9) << name;
    if (hashimoto_irreducible(g)) {
      EXPECT_LE(hashimoto_spectrum(g).theta(), rho + 1e-9) << name;
    }
  }
}

TEST(Hashimoto, RegularGraphs) {
  for (const char* name : {"complete:4", "complete:5", "petersen", "complete_bipartite:3x3"}) {
    const auto g = named_graph(name);
    const double d = g.max_degree();
    EXPECT_NEAR(adjacency_radius(g), d, 1e-9) << name;
    EXPECT_NEAR(hashimoto_spectrum(g).theta(), d - 1.0, 1e-9) << name;
  }
}

TEST(WeakNormality, VertexTransitiveIsOne) {
  EXPECT_NEAR(weak_normality(complete_graph(4)), 1.0, 1e-9);
  const double c = weak_normality(complete_bipartite(2, 3));
  EXPECT_GT(c, 0.0);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_THROW(weak_normality(cycle_graph(5)), ReducibleError);
}

TEST(PtInvariance, HoldsOnCorpus) {
  for (const auto& [name, g] : spectral_corpus()) EXPECT_TRUE(check_pt_invariance(g, 6)) << name;
}

TEST(EigenvectorRelations, HoldOnIrreducibleCorpus) {
  for (const auto& [name, g] : spectral_corpus()) {
    if (!hashimoto_irreducible(g)) continue;
    EXPECT_LE(check_eigenvector_relations(g).max_violation(), 1e-8) << name;
  }
}

TEST(Backtrack, ShortestReturnMatchesBfsOracle) {
  // K4: ab -> bc -> cd -> db -> ba is shortest.
  const auto k4 = backtrack_bound(complete_graph(4), 20);
  for (const auto& e : k4.edges) EXPECT_EQ(e.steps, 4);
  EXPECT_TRUE(k4.all_return());
  // independent search over explicit non-backtracking edge sequences
  for (const char* name : {"complete_bipartite:2x3", "cycle_with_chord:6", "petersen"}) {
    const auto g = named_graph(name);
    const auto rep = backtrack_bound(g, 30);
    for (const auto& be : rep.edges) {
      std::deque<std::pair<OrientedEdge, int>> q{{be.edge, 0}};
      std::set<OrientedEdge> seen{be.edge};
      int found = -1;
      while (!q.empty() && found < 0) {
        auto [e, d] = q.front();
        q.pop_front();
        for (Vertex x : g.neighbors(e.head)) {
          if (x == e.tail) continue;
          const OrientedEdge f{e.head, x};
          if (f == be.edge.reverse()) {
            found = d + 1;
            break;
          }
          if (seen.insert(f).second) q.push_back({f, d + 1});
        }
      }
      ASSERT_TRUE(be.steps.has_value()) << name;
      EXPECT_EQ(*be.steps, found) << name << " " << to_string(be.edge);
    }
  }
}

TEST(Backtrack, BoundHoldsOnIrreducibleCorpus) {
  for (const auto& [name, g] : spectral_corpus()) {
    if (!hashimoto_irreducible(g)) continue;
    const auto rep = backtrack_bound(g, 4 * g.num_edges());
    EXPECT_TRUE(rep.all_return()) << name;
    EXPECT_GE(rep.min_slack(), -1e-9) << name;
  }
}

TEST(Backtrack, LengthCapReportsMissingReturn) {
  const auto rep = backtrack_bound(complete_graph(4), 3);
  EXPECT_FALSE(rep.all_return());
}

TEST(RhoBounds, PlanarAndGenus) {
  EXPECT_EQ(planar_rho_bound(5), 5.0);
  EXPECT_EQ(planar_rho_bound(6), 6.0);
  EXPECT_NEAR(planar_rho_bound(36), std::sqrt(396.0), 1e-12);
  EXPECT_NEAR(planar_rho_bound(40), std::sqrt(304.0) + 2 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(*genus_rho_bound(50, 0), std::sqrt(320.0) + 10.0, 1e-12);
  EXPECT_FALSE(genus_rho_bound(11, 0).has_value());
  EXPECT_NEAR(*genus_rho_bound(100, 6), std::sqrt(8.0 * 84) + 16.0, 1e-12);
  EXPECT_NEAR(*genus_rho_bound(100, 2), std::sqrt(8.0 * 88) + 12.0, 1e-12);
  EXPECT_NEAR(*genus_rho_bound(100, 4), std::sqrt(8.0 * 86) + 14.0, 1e-12);
}

TEST(RhoBounds, PlanarGridsRespectBound) {
  for (const char* name : {"grid:3x3", "grid:4x4", "cycle:10"}) {
    const auto g = named_graph(name);
    EXPECT_LE(adjacency_radius(g), planar_rho_bound(g.max_degree()) + 1e-9);
  }
  EXPECT_LT(adjacency_radius(grid_graph(3, 3)), 4.0);
}

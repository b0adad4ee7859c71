#include <gtest/gtest.h>

#include "oracles.hpp"
#include "specglauber/corpus.hpp"
#include "specglauber/gibbs.hpp"

using namespace specglauber;

TEST(GibbsWeight, EdgeExamples) {
  const auto g = path_graph(2);
  EXPECT_DOUBLE_EQ(gibbs_weight(g, GibbsParams::ising(0.5), {1, 1}), 0.5);
  EXPECT_DOUBLE_EQ(gibbs_weight(g, GibbsParams::hardcore(1.0), {1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(gibbs_weight(g, GibbsParams::hardcore(2.0), {1, -1}), 2.0);
  EXPECT_DOUBLE_EQ(gibbs_weight(g, GibbsParams::hardcore(2.0), {-1, -1}), 1.0);
}

TEST(GibbsParams, Validation) {
  EXPECT_THROW(GibbsParams::ising(-1.0), PreconditionError);
  EXPECT_THROW(GibbsParams::hardcore(0.0), PreconditionError);
  EXPECT_THROW(GibbsParams::general(2.0, 1.0, 1.0), PreconditionError);
  EXPECT_TRUE(GibbsParams::ising(0.5).antiferromagnetic());
  EXPECT_TRUE(GibbsParams::ising(2.0).ferromagnetic());
}

TEST(Marginals, EdgeExamples) {
  const auto g = path_graph(2);
  EXPECT_NEAR(partition_and_marginals(g, GibbsParams::hardcore(1.0), {}).plus[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(partition_and_marginals(g, GibbsParams::ising(0.5), {}).plus[0], 0.5, 1e-15);
  Boundary b;
  b.pins[1] = 1;
  EXPECT_EQ(partition_and_marginals(g, GibbsParams::hardcore(1.0), b).plus[0], 0.0);
  EXPECT_NEAR(partition_and_marginals(g, GibbsParams::hardcore(1.0), {}).z, 3.0, 1e-12);
}

TEST(Marginals, MatchDirectSummation) {
  CounterRng rng(3, 3);
  for (const auto& [name, g] : small_corpus()) {
    if (g.num_vertices() > 8) continue;
    for (const auto& p : {GibbsParams::ising(0.7), GibbsParams::hardcore(1.5),
                          GibbsParams::general(0.2, 1.4, 0.6)}) {
      const auto b = random_boundary(g, p, rng);
      const auto m = partition_and_marginals(g, p, b);
      const auto pins = b.dense(g.num_vertices());
      for (Vertex v = 0; v < g.num_vertices(); ++v)
        EXPECT_NEAR(m.plus[v], oracle::conditional_plus(g, p, pins, v), 1e-12) << name;
    }
  }
}

TEST(Marginals, LargeParametersDoNotOverflow) {
  const auto g = complete_graph(6);
  const auto m = partition_and_marginals(g, GibbsParams::general(1e3, 1e3, 1e-3), {});
  for (double q : m.plus) EXPECT_TRUE(q >= 0.0 && q <= 1.0);
  EXPECT_TRUE(std::isfinite(m.log_z));
}

TEST(Marginals, ZeroFieldIsingIsSymmetric) {
  for (const auto& [name, g] : small_corpus()) {
    const auto m = partition_and_marginals(g, GibbsParams::ising(1.7), {});
    for (double q : m.plus) EXPECT_NEAR(q, 0.5, 1e-12) << name;
  }
}

TEST(Marginals, EmptySupportAndCapRaise) {
  Boundary b;
  b.pins[0] = 1;
  b.pins[1] = 1;
  EXPECT_THROW(partition_and_marginals(path_graph(3), GibbsParams::hardcore(1.0), b),
               SupportError);
  EXPECT_THROW(partition_and_marginals(path_graph(10), GibbsParams::ising(0.5), {}, 8),
               PreconditionError);
}

TEST(InfluenceExact, EdgeExamples) {
  const auto g = path_graph(2);
  const auto is = influence_matrix_exact(g, GibbsParams::ising(0.5), {});
  EXPECT_NEAR(is(0, 1), -1.0 / 3, 1e-14);
  EXPECT_EQ(is(0, 0), 1.0);
  const auto hc = influence_matrix_exact(g, GibbsParams::hardcore(1.0), {});
  EXPECT_NEAR(hc(1, 0), -0.5, 1e-14);
}

TEST(InfluenceExact, DegenerateConditioningGivesZeroRow) {
  // vertex 1 is forced to -1 by the occupied pin at 0
  Boundary b;
  b.pins[0] = 1;
  const auto inf = influence_matrix_exact(path_graph(3), GibbsParams::hardcore(1.0), b);
  EXPECT_EQ(inf.at(Label::vertex(1), Label::vertex(2)), 0.0);
  EXPECT_EQ(inf.at(Label::vertex(2), Label::vertex(1)), 0.0);
}

TEST(Symmetrize, ConjugatedMatrixIsSymmetric) {
  EXPECT_LE(symmetrize_check(path_graph(2), GibbsParams::ising(0.5), {}).asymmetry, 1e-12);
  const auto k4 = symmetrize_check(complete_graph(4), GibbsParams::hardcore(0.5), {});
  EXPECT_LE(k4.asymmetry, 1e-10);
  EXPECT_FALSE(k4.degenerate_vertex.has_value());
}

TEST(Symmetrize, PrintedConjugationIsNotSymmetric) {
  // A non-uniform marginal profile separates M I M^-1 from M^-1 I M.
  const auto r = symmetrize_check(star_graph(4), GibbsParams::hardcore(1.0), {});
  EXPECT_LE(r.asymmetry, 1e-12);
  EXPECT_GT(r.literal_asymmetry, 1e-3);
}

TEST(Symmetrize, ForcedMarginalIsReported) {
  Boundary b;
  b.pins[1] = 1;
  const auto r = symmetrize_check(path_graph(2), GibbsParams::hardcore(1.0), b);
  ASSERT_TRUE(r.degenerate_vertex.has_value());
  EXPECT_EQ(*r.degenerate_vertex, 0);
}

TEST(Symmetrize, RadiusMatchesGeneralEigensolver) {
  CounterRng rng(9, 9);
  for (const auto& [name, g] : small_corpus()) {
    for (const auto& p : {GibbsParams::ising(0.5), GibbsParams::hardcore(2.0)}) {
      const auto b = random_boundary(g, p, rng);
      const auto inf = influence_matrix_exact(g, p, b);
      const auto m = partition_and_marginals(g, p, b);
      if (inf.rows() == 0) continue;
      EXPECT_NEAR(influence_radius(inf, m.plus), oracle::max_modulus(inf.entries()), 1e-8)
          << name << " " << b.describe();
      EXPECT_LE(oracle::max_imag(inf.entries()), 1e-8) << name;
    }
  }
}

TEST(MarginalBoundedness, EdgeExamples) {
  // hard-core edge: worst supported marginal is 1/(1+lambda) with the
  // other end free, or lambda/(1+lambda) when it is pinned empty.
  EXPECT_NEAR(marginal_boundedness(path_graph(2), GibbsParams::hardcore(1.0)), 1.0 / 3, 1e-12);
  EXPECT_NEAR(marginal_boundedness(path_graph(2), GibbsParams::ising(0.5)), 1.0 / 3, 1e-12);
}

TEST(MarginalBoundedness, DecreasesWithFugacity) {
  double prev = 1.0;
  for (double lam : {1.0, 0.5, 0.1, 0.01}) {
    const double b = marginal_boundedness(path_graph(3), GibbsParams::hardcore(lam));
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(TotalConnectivity, Examples) {
  EXPECT_TRUE(total_connectivity_check(cycle_graph(5), GibbsParams::ising(0.3)));
  EXPECT_TRUE(total_connectivity_check(complete_graph(4), GibbsParams::hardcore(1.0)));
  EXPECT_TRUE(total_connectivity_check(cycle_graph(5), GibbsParams::hardcore(1.0)));
  EXPECT_THROW(total_connectivity_check(path_graph(11), GibbsParams::hardcore(1.0)),
               PreconditionError);
}

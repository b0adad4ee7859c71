#include <gtest/gtest.h>

#include "specglauber/corpus.hpp"
#include "specglauber/graph.hpp"

using namespace specglauber;

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(build_graph(3, {{0, 0}}), GraphError);
  EXPECT_THROW(build_graph(3, {{0, 3}}), GraphError);
  EXPECT_THROW(build_graph(3, {{-1, 2}}), GraphError);
}

TEST(Graph, MergesDuplicateEdges) {
  const auto g = build_graph(3, {{0, 1}, {1, 0}, {1, 2}});
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.degree(1), 2);
}

TEST(Graph, BasicPredicates) {
  EXPECT_TRUE(path_graph(5).is_tree());
  EXPECT_FALSE(cycle_graph(5).is_tree());
  EXPECT_TRUE(cycle_graph(5).is_cycle());
  EXPECT_TRUE(petersen_graph().is_regular());
  EXPECT_EQ(petersen_graph().max_degree(), 3);
  EXPECT_FALSE(build_graph(4, {{0, 1}, {2, 3}}).connected());
  EXPECT_EQ(star_graph(5).max_degree(), 4);
  EXPECT_EQ(grid_graph(3, 3).num_edges(), 12);
  EXPECT_EQ(complete_bipartite(2, 3).num_edges(), 6);
  EXPECT_TRUE(complete_graph(4).adjacent(0, 3));
}

TEST(Graph, OrientedEdgesAreLexicographic) {
  const auto es = oriented_edges(cycle_graph(3));
  ASSERT_EQ(es.size(), 6u);
  for (std::size_t i = 1; i < es.size(); ++i) EXPECT_LT(es[i - 1], es[i]);
  EXPECT_EQ(to_string(es[0]), "0-1");
}

TEST(Corpus, RandomGraphsAreConnectedWithRequestedSize) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_connected(8, 11, seed);
    EXPECT_TRUE(g.connected());
    EXPECT_EQ(g.num_edges(), 11);
  }
  EXPECT_EQ(random_connected(8, 11, 3), random_connected(8, 11, 3));
  EXPECT_THROW(random_connected(5, 3, 1), PreconditionError);
}

TEST(Corpus, NamedGraphs) {
  EXPECT_EQ(named_graph("grid:2x3").num_vertices(), 6);
  EXPECT_EQ(named_graph("cycle_with_chord:6").num_edges(), 7);
  EXPECT_EQ(named_graph("petersen").num_edges(), 15);
  EXPECT_THROW(named_graph("blob:3"), PreconditionError);
  EXPECT_THROW(named_graph("cycle:x"), PreconditionError);
}

TEST(Extension, VertexExtensionSplitsNeighbourhood) {
  const auto g = cycle_graph(4);
  const auto ext = vertex_extension(g, 0);
  EXPECT_EQ(ext.graph.num_vertices(), 5);
  EXPECT_EQ(ext.graph.num_edges(), 4);
  const int a = ext.index_of({0, 1}), b = ext.index_of({0, 3});
  EXPECT_EQ(ext.graph.degree(a), 1);
  EXPECT_TRUE(ext.graph.adjacent(a, ext.index_of({1, -1})));
  EXPECT_TRUE(ext.graph.adjacent(b, ext.index_of({3, -1})));
  EXPECT_FALSE(ext.contains({0, -1}));
  EXPECT_TRUE(ext.graph.is_tree());
}

TEST(Extension, PairExtensionIsOrderIndependent) {
  const auto g = complete_graph(4);
  const auto a = pair_extension(g, 0, 2);
  const auto b = pair_extension(g, 2, 0);
  EXPECT_EQ(a.keys, b.keys);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_THROW(pair_extension(g, 1, 1), PreconditionError);
}

TEST(Extension, SplittingAdjacentVerticesSplitsTheirEdge) {
  const auto g = path_graph(2);
  const auto e = pair_extension(g, 0, 1);
  EXPECT_EQ(e.graph.num_vertices(), 2);
  EXPECT_TRUE(e.graph.adjacent(e.index_of({0, 1}), e.index_of({1, 0})));
}

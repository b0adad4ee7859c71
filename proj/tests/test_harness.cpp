#include <gtest/gtest.h>

#include <algorithm>

#include "specglauber/harness.hpp"
#include "specglauber/io.hpp"

using namespace specglauber;

TEST(Spec, ParsesDefaultsAndModels) {
  const auto s = spec_from_json(json::parse(R"({
    "graphs": ["complete:4"],
    "models": [{"model": "ising", "beta": 0.8}, {"model": "hardcore", "radius": "rho", "eps": 0.2}],
    "checks": ["THM_5_2", "saw_oracle"]
  })"));
  EXPECT_EQ(s.graphs.size(), 1u);
  EXPECT_EQ(s.models.size(), 2u);
  EXPECT_TRUE(s.models[1].graph_dependent());
  EXPECT_EQ(s.boundary_depth, 2);
  EXPECT_EQ(s.random_boundaries, 20);
  EXPECT_DOUBLE_EQ(s.eps, 0.2);
}

TEST(Spec, RejectsUnknownCheck) {
  EXPECT_THROW(spec_from_json(json::parse(R"({"graphs": [], "models": [], "checks": ["nope"]})")),
               PreconditionError);
}

TEST(Spec, ResolvesGraphDependentModels) {
  const auto g = complete_graph(4);
  ModelSpec m;
  m.model = "hardcore";
  m.radius = "rho";
  m.eps = 0.5;
  EXPECT_NEAR(resolve_model(m, g).lambda, 0.5 * lambda_c(3.0), 1e-9);
  m.model = "ising";
  m.point = "lo";
  EXPECT_NEAR(resolve_model(m, g).beta, u_ising(3.0, 0.5).lo, 1e-9);
}

TEST(Run, AdjacencyBoundOnK4Passes) {
  ExperimentSpec s;
  s.graphs = {"complete:4"};
  ModelSpec m;
  m.model = "ising";
  m.radius = "rho";
  m.eps = 0.2;
  s.models = {m};
  s.checks = {"THM_5_2"};
  const auto r = run(s);
  ASSERT_EQ(r.instances.size(), 1u);
  EXPECT_EQ(r.passed, 1);
  EXPECT_EQ(r.instances[0].status, "pass");
  EXPECT_GT(r.instances[0].boundaries, 1);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Run, ReducibleHashimotoIsSkipped) {
  ExperimentSpec s;
  s.graphs = {"cycle:4"};
  ModelSpec m;
  m.model = "ising";
  m.beta = 0.9;
  s.models = {m};
  s.checks = {"THM_5_3"};
  const auto r = run(s);
  EXPECT_EQ(r.skipped, 1);
  EXPECT_EQ(r.instances[0].reason, "hashimoto_reducible");
}

TEST(Run, EmptyChecksGiveEmptyReport) {
  ExperimentSpec s;
  s.graphs = {"path:3"};
  ModelSpec m;
  m.model = "hardcore";
  s.models = {m};
  const auto r = run(s);
  EXPECT_TRUE(r.instances.empty());
  EXPECT_EQ(r.passed + r.failed + r.skipped, 0);
}

TEST(Run, DeterministicAcrossThreadCounts) {
  const auto s = spec_from_json(json::parse(R"({
    "graphs": ["path:4", "complete:4", "cycle_with_chord:5"],
    "models": [{"model": "hardcore", "lambda": 0.7}, {"model": "ising", "beta": 1.3}],
    "boundaries": {"depth": 1, "random": 3},
    "checks": ["THM_5_2", "THM_11_2", "saw_oracle", "path_decomposition"],
    "seed": 11
  })"));
  const auto a = to_json(run(s, 1), false);
  const auto b = to_json(run(s, 2), false);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["summary"]["fail"], 0);
  EXPECT_FALSE(a["environment"].contains("timestamp"));
}

TEST(Run, CsvHasOneRowPerInstance) {
  const auto s = spec_from_json(json::parse(R"({
    "graphs": ["path:3"], "models": [{"model": "hardcore", "lambda": 1}],
    "boundaries": "none", "checks": ["saw_oracle", "symmetrization"]
  })"));
  const auto csv = report_to_csv(run(s));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(GraphIo, ParsesTextFormat) {
  const auto g = parse_graph_text("# triangle\n3 3\n0 1\n1 2\n2 0\n");
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.num_edges(), 3);
}

TEST(GraphIo, TextErrorsNameTheLine) {
  try {
    parse_graph_text("3 2\n0 1\n1 7\n", "g.txt");
    FAIL() << "expected a graph error";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("g.txt:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_graph_text("3 2\n0 1\n"), GraphError);
  EXPECT_THROW(parse_graph_text("2 1\n0 0\n"), GraphError);
}

TEST(GraphIo, JsonRoundTrip) {
  const auto g = petersen_graph();
  const auto h = graph_from_json(graph_to_json(g));
  EXPECT_EQ(h.edges(), g.edges());
  EXPECT_THROW(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 2]]})")), GraphError);
}

TEST(GraphIo, LoadsNamedGraphs) {
  EXPECT_EQ(load_graph("grid:3x3").num_edges(), 12);
  EXPECT_THROW(load_graph("no_such_graph"), Error);
}

TEST(BoundaryIo, RoundTripAndValidation) {
  const Boundary b{{{0, 1}, {3, -1}}};
  EXPECT_EQ(boundary_from_json(boundary_to_json(b)).pins, b.pins);
  EXPECT_THROW(boundary_from_json(json::parse(R"({"pins": {"0": 2}})")), PreconditionError);
}

TEST(MatrixIo, CsvAndJson) {
  LabeledMatrix m(vertex_labels({0, 2}), vertex_labels({0, 2}));
  m(0, 1) = 0.5;
  const auto csv = matrix_to_csv(m);
  EXPECT_NE(csv.find("0.5"), std::string::npos);
  const auto j = matrix_to_json(m);
  EXPECT_EQ(j.dump().find("nan"), std::string::npos);
}

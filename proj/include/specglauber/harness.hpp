#pragma once

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "specglauber/bounds.hpp"
#include "specglauber/corpus.hpp"
#include "specglauber/errors.hpp"
#include "specglauber/gibbs.hpp"
#include "specglauber/influence_saw.hpp"
#include "specglauber/io.hpp"
#include "specglauber/parallel.hpp"
#include "specglauber/spectral.hpp"

namespace specglauber {

inline constexpr const char* version = "0.1.0";

/// A model entry of an experiment. Parameters may be fixed, or tied to the
/// graph: an Ising interaction picked from the uniqueness window around a
/// graph radius, or a hard-core fugacity at a fraction of the threshold.
struct ModelSpec {
  std::string model;  // ising | hardcore | general
  double beta = 1.0, gamma = 1.0, lambda = 1.0;
  std::string radius;  // "" | "rho" | "theta" | a number
  double eps = 0.0;    // window/threshold epsilon when radius is set
  std::string point = "mid";  // lo | mid | hi within the Ising window

  bool graph_dependent() const { return !radius.empty(); }
};

/// Property suites that are not single bounds.
inline const std::vector<std::string>& property_checks() {
  static const std::vector<std::string> names{"saw_oracle", "symmetrization",
                                              "path_decomposition"};
  return names;
}

struct ExperimentSpec {
  std::vector<std::string> graphs;
  std::vector<ModelSpec> models;
  int boundary_depth = 2;     // every boundary with at most this many pins
  int random_boundaries = 20; // plus this many seeded random ones
  bool boundaries_none = false;
  std::vector<std::string> checks;
  double eps = 0.2;
  std::uint64_t seed = 1;
  double identity_tol = 1e-9;
  double relative_tol = 1e-7;
};

inline ModelSpec model_from_json(const json& j) {
  ModelSpec m;
  if (!j.is_object() || !j.contains("model")) throw PreconditionError("model entry needs 'model'");
  m.model = j.at("model").get<std::string>();
  if (m.model != "ising" && m.model != "hardcore" && m.model != "general")
    throw PreconditionError("unknown model '" + m.model + "'");
  m.beta = j.value("beta", m.model == "hardcore" ? 0.0 : 1.0);
  m.gamma = j.value("gamma", m.model == "ising" ? m.beta : 1.0);
  m.lambda = j.value("lambda", 1.0);
  if (j.contains("radius")) {
    const auto& r = j.at("radius");
    m.radius = r.is_string() ? r.get<std::string>() : format_double(r.get<double>());
    if (m.model == "general") throw PreconditionError("graph-tied parameters need ising or hardcore");
    m.eps = j.value("eps", 0.2);
    m.point = j.value("point", std::string("mid"));
    if (m.point != "lo" && m.point != "mid" && m.point != "hi")
      throw PreconditionError("window point must be lo, mid or hi");
  }
  return m;
}

inline json model_to_json(const ModelSpec& m) {
  json j{{"model", m.model}};
  if (m.graph_dependent()) {
    j["radius"] = m.radius;
    j["eps"] = m.eps;
    if (m.model == "ising") j["point"] = m.point;
  } else if (m.model == "ising") {
    j["beta"] = m.beta;
  } else if (m.model == "hardcore") {
    j["lambda"] = m.lambda;
  } else {
    j["beta"] = m.beta;
    j["gamma"] = m.gamma;
    j["lambda"] = m.lambda;
  }
  return j;
}

inline ExperimentSpec spec_from_json(const json& j) {
  ExperimentSpec s;
  try {
    for (const auto& g : j.at("graphs")) s.graphs.push_back(g.get<std::string>());
    for (const auto& m : j.at("models")) s.models.push_back(model_from_json(m));
    if (j.contains("checks"))
      for (const auto& c : j.at("checks")) s.checks.push_back(c.get<std::string>());
    if (j.contains("boundaries")) {
      const auto& b = j.at("boundaries");
      if (b.is_string()) {
        if (b.get<std::string>() != "none") throw PreconditionError("boundaries must be 'none' or an object");
        s.boundaries_none = true;
      } else {
        s.boundary_depth = b.value("depth", s.boundary_depth);
        s.random_boundaries = b.value("random", s.random_boundaries);
      }
    }
    s.eps = j.value("eps", s.eps);
    s.seed = j.value("seed", s.seed);
    if (j.contains("tolerances")) {
      s.identity_tol = j.at("tolerances").value("identity", s.identity_tol);
      s.relative_tol = j.at("tolerances").value("relative", s.relative_tol);
    }
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("experiment spec: ") + e.what());
  }
  for (const auto& c : s.checks) {
    const auto& props = property_checks();
    if (std::find(props.begin(), props.end(), c) == props.end()) parse_bound_id(c);
  }
  return s;
}

/// Expands "corpus:small" and "corpus:spectral"; anything else goes through
/// load_graph.
inline std::vector<NamedGraph> resolve_graphs(const std::vector<std::string>& sel,
                                              std::uint64_t seed) {
  std::vector<NamedGraph> out;
  for (const auto& s : sel) {
    if (s == "corpus:small") {
      for (auto& g : small_corpus(seed)) out.push_back(std::move(g));
    } else if (s == "corpus:spectral") {
      for (auto& g : spectral_corpus(seed)) out.push_back(std::move(g));
    } else {
      out.push_back({s, load_graph(s)});
    }
  }
  return out;
}

/// Concrete parameters of a model entry on a graph.
inline GibbsParams resolve_model(const ModelSpec& m, const Graph& g) {
  if (!m.graph_dependent()) {
    if (m.model == "ising") return GibbsParams::ising(m.beta);
    if (m.model == "hardcore") return GibbsParams::hardcore(m.lambda);
    return GibbsParams::general(m.beta, m.gamma, m.lambda);
  }
  double r;
  if (m.radius == "rho") {
    r = adjacency_radius(g);
  } else if (m.radius == "theta") {
    if (!hashimoto_irreducible(g)) throw PreconditionError("hashimoto_reducible");
    r = hashimoto_spectrum(g).theta();
  } else {
    try {
      r = std::stod(m.radius);
    } catch (const std::exception&) {
      throw PreconditionError("radius must be rho, theta or a number");
    }
  }
  if (m.model == "ising") {
    const auto w = u_ising(r, m.eps);
    return GibbsParams::ising(m.point == "lo" ? w.lo : m.point == "hi" ? w.hi : w.mid());
  }
  return GibbsParams::hardcore((1.0 - m.eps) * lambda_c(r));
}

/// Every boundary with at most `depth` pins (all spin patterns), then
/// `random` seeded random ones. Boundaries with empty support are dropped.
inline std::vector<Boundary> boundary_sweep(const Graph& g, const GibbsParams& p, int depth,
                                            int random, std::uint64_t seed) {
  const int n = g.num_vertices();
  std::vector<Boundary> out{Boundary{}};
  auto supported = [&](const Boundary& b) {
    if (p.beta > 0.0) return true;
    for (auto [u, v] : g.edges())
      if (b.contains(u) && b.contains(v) && b.pins.at(u) > 0 && b.pins.at(v) > 0) return false;
    return true;
  };
  std::vector<Vertex> chosen;
  auto rec = [&](auto&& self, Vertex from) -> void {
    if (!chosen.empty() && static_cast<int>(chosen.size()) < n) {
      const int k = static_cast<int>(chosen.size());
      for (int t = 0; t < (1 << k); ++t) {
        Boundary b;
        for (int i = 0; i < k; ++i) b.pins[chosen[i]] = ((t >> i) & 1) ? 1 : -1;
        if (supported(b)) out.push_back(b);
      }
    }
    if (static_cast<int>(chosen.size()) >= depth) return;
    for (Vertex v = from; v < n; ++v) {
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  CounterRng rng(seed, 0x626e64);
  for (int i = 0; i < random && n >= 3; ++i) out.push_back(random_boundary(g, p, rng));
  return out;
}

struct InstanceResult {
  std::string graph;
  json model;
  std::string params;
  std::string check;
  double eps = 0.0;
  std::string status = "skip";  // pass | fail | skip
  std::string reason;
  double lhs = 0.0;             // worst over the evaluated boundaries
  double rhs = 0.0;
  int boundaries = 0;
  std::string worst_boundary;
  std::map<std::string, double> details;
};

struct Report {
  json environment;
  std::vector<InstanceResult> instances;
  int passed = 0, failed = 0, skipped = 0;

  int exit_code() const { return failed > 0 ? 1 : 0; }
};

inline json to_json(const InstanceResult& r) {
  json j{{"graph", r.graph},   {"model", r.model},          {"params", r.params},
         {"check", r.check},   {"eps", r.eps},              {"status", r.status},
         {"lhs", r.lhs},       {"rhs", r.rhs},              {"boundaries", r.boundaries},
         {"worst_boundary", r.worst_boundary}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  json d = json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = d;
  return j;
}

inline json to_json(const Report& r, bool with_timestamp = true) {
  json env = r.environment;
  if (!with_timestamp) env.erase("timestamp");
  json inst = json::array();
  for (const auto& i : r.instances) inst.push_back(to_json(i));
  return {{"environment", env},
          {"instances", inst},
          {"summary",
           {{"pass", r.passed},
            {"fail", r.failed},
            {"skip", r.skipped},
            {"total", static_cast<int>(r.instances.size())}}}};
}

/// One CSV row per instance.
inline std::string report_to_csv(const Report& r) {
  std::string out = "graph,params,check,eps,status,reason,lhs,rhs,boundaries\n";
  for (const auto& i : r.instances)
    out += i.graph + ",\"" + i.params + "\"," + i.check + "," + format_double(i.eps) + "," +
           i.status + "," + i.reason + "," + format_double(i.lhs) + "," + format_double(i.rhs) +
           "," + std::to_string(i.boundaries) + "\n";
  return out;
}

namespace detail {

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Worst-case aggregation: a failing boundary wins, otherwise the largest
// lhs/rhs ratio.
inline void absorb(InstanceResult& acc, const BoundReport& r, const Boundary& b) {
  ++acc.boundaries;
  if (r.status == BoundStatus::skip) return;
  const auto ratio = [](double l, double h) { return h != 0.0 ? l / h : l; };
  const bool worse = acc.status == "skip" ||
                     (r.status == BoundStatus::fail && acc.status != "fail") ||
                     ((r.status == BoundStatus::fail) == (acc.status == "fail") &&
                      ratio(r.lhs, r.rhs) > ratio(acc.lhs, acc.rhs));
  if (worse) {
    acc.status = to_string(r.status);
    acc.reason = r.reason;
    acc.lhs = r.lhs;
    acc.rhs = r.rhs;
    acc.worst_boundary = b.describe();
    for (const auto& [k, v] : r.details) acc.details[k] = v;
  }
}

inline InstanceResult run_property(const std::string& check, const Graph& g, const GibbsParams& p,
                                   const std::vector<Boundary>& bs, const ExperimentSpec& spec) {
  InstanceResult acc;
  acc.status = "skip";
  for (const auto& b : bs) {
    BoundReport r;
    r.rhs = check == "symmetrization" ? 1e-10 : spec.identity_tol;
    const auto exact = influence_matrix_exact(g, p, b);
    if (check == "saw_oracle") {
      const auto saw = influence_saw(g, p, b);
      r.lhs = exact.rows() ? (saw.entries() - exact.entries()).cwiseAbs().maxCoeff() : 0.0;
    } else if (check == "symmetrization") {
      const auto s = symmetrize_check(g, p, b);
      if (s.degenerate_vertex) {
        ++acc.boundaries;
        continue;
      }
      r.lhs = s.asymmetry;
    } else {
      r.lhs = path_decomposition_residual(g, p, b, exact);
    }
    r.status = r.lhs <= r.rhs ? BoundStatus::pass : BoundStatus::fail;
    if (r.status == BoundStatus::fail) r.reason = "residual";
    absorb(acc, r, b);
  }
  if (acc.status == "skip" && acc.reason.empty()) acc.reason = "no_applicable_boundary";
  return acc;
}

}  // namespace detail

/// Runs the cross product graphs x models x checks. Instances are computed
/// in parallel and assembled in spec order.
inline Report run(const ExperimentSpec& spec, int threads = 1) {
  Report rep;
  rep.environment = {{"version", version},
                     {"seed", spec.seed},
                     {"tolerances", {{"identity", spec.identity_tol}, {"relative", spec.relative_tol}}},
                     {"timestamp", detail::utc_timestamp()}};
  const auto graphs = resolve_graphs(spec.graphs, spec.seed);
  struct Job {
    std::size_t g, m, c;
  };
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < graphs.size(); ++g)
    for (std::size_t m = 0; m < spec.models.size(); ++m)
      for (std::size_t c = 0; c < spec.checks.size(); ++c) jobs.push_back({g, m, c});
  rep.instances.resize(jobs.size());

  BoundOptions opt;
  opt.identity_tol = spec.identity_tol;
  opt.relative_tol = spec.relative_tol;
  opt.grid.seed = spec.seed;

  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& ng = graphs[job.g];
    const auto& ms = spec.models[job.m];
    const auto& check = spec.checks[job.c];
    InstanceResult res;
    res.graph = ng.name;
    res.model = model_to_json(ms);
    res.check = check;
    res.eps = ms.graph_dependent() ? ms.eps : spec.eps;
    GibbsParams p;
    try {
      p = resolve_model(ms, ng.graph);
    } catch (const PreconditionError& e) {
      res.status = "skip";
      res.reason = e.what();
      rep.instances[i] = res;
      return;
    }
    res.params = p.describe();
    const auto bs =
        spec.boundaries_none
            ? std::vector<Boundary>{Boundary{}}
            : boundary_sweep(ng.graph, p, spec.boundary_depth, spec.random_boundaries,
                             spec.seed * 7919 + job.g);
    const auto& props = property_checks();
    if (std::find(props.begin(), props.end(), check) != props.end()) {
      auto r = detail::run_property(check, ng.graph, p, bs, spec);
      r.graph = res.graph;
      r.model = res.model;
      r.params = res.params;
      r.check = check;
      r.eps = res.eps;
      rep.instances[i] = r;
      return;
    }
    const auto setup = prepare_bound(parse_bound_id(check), ng.graph, p, res.eps, opt);
    if (setup.skip) {
      res.status = "skip";
      res.reason = setup.reason;
      res.details = setup.details;
      rep.instances[i] = res;
      return;
    }
    for (const auto& b : bs) detail::absorb(res, evaluate_bound(setup, ng.graph, p, b, opt), b);
    if (res.status == "skip" && res.reason.empty()) res.reason = "no_applicable_boundary";
    rep.instances[i] = res;
  });

  for (const auto& r : rep.instances) {
    if (r.status == "pass") ++rep.passed;
    else if (r.status == "fail") ++rep.failed;
    else ++rep.skipped;
  }
  return rep;
}

}  // namespace specglauber

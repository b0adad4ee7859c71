// Command-line front end: spectra, influence, verify, glauber, potential,
// report and corpus subcommands.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "specglauber/specglauber.hpp"

using namespace specglauber;

namespace {

struct Global {
  std::uint64_t seed = 1;
  double tol = 1e-12;
  int threads = 0;
  std::string out;
  std::string format = "json";
};

struct ModelArgs {
  std::string model = "hardcore";
  double beta = 1.0, gamma = 1.0, lambda = 1.0;
  bool beta_set = false, gamma_set = false;

  GibbsParams params() const {
    if (model == "ising") return GibbsParams::ising(beta);
    if (model == "hardcore") return GibbsParams::hardcore(lambda);
    return GibbsParams::general(beta, gamma, lambda);
  }
};

void add_model_options(CLI::App* app, ModelArgs& m) {
  app->add_option("--model", m.model, "ising, hardcore or general")
      ->check(CLI::IsMember({"ising", "hardcore", "general"}));
  app->add_option("--beta", m.beta, "interaction on ++ edges");
  app->add_option("--gamma", m.gamma, "interaction on -- edges (general model)");
  app->add_option("--lambda", m.lambda, "external field / fugacity");
}

Boundary load_boundary(const std::string& arg) {
  if (arg.empty()) return {};
  std::string text = arg;
  if (arg.find('{') == std::string::npos) text = read_file(arg);
  try {
    return boundary_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw PreconditionError("boundary: " + std::string(e.what()));
  }
}

void emit(const Global& g, const json& j, const std::string& csv = {}) {
  std::string text;
  if (g.format == "csv") {
    if (csv.empty()) throw PreconditionError("this subcommand has no CSV form");
    text = csv;
  } else {
    text = j.dump(2) + "\n";
  }
  if (g.out.empty()) std::cout << text;
  else write_file(g.out, text);
}

json spectra_json(const std::string& name, const Graph& gr, const PerronOptions& opt,
                  bool matrices) {
  json j{{"graph", name},
         {"n", gr.num_vertices()},
         {"m", gr.num_edges()},
         {"max_degree", gr.max_degree()},
         {"connected", gr.connected()}};
  if (gr.num_edges() > 0 && gr.connected()) {
    const double rho = adjacency_radius(gr, opt);
    j["rho_adjacency"] = rho;
    j["planar_rho_bound"] = planar_rho_bound(std::max(gr.max_degree(), 1));
  }
  const bool irr = gr.num_edges() > 0 && hashimoto_irreducible(gr);
  j["hashimoto_irreducible"] = irr;
  j["pt_invariant_k6"] = check_pt_invariance(gr, 6);
  if (irr) {
    const auto s = hashimoto_spectrum(gr, opt);
    j["theta"] = s.theta();
    j["weak_normality"] = s.perron.left_vec.cwiseQuotient(s.perron.right_vec).maxCoeff();
    const auto rel = check_eigenvector_relations(gr, opt);
    j["eigenvector_relation_violation"] = rel.max_violation();
    const auto bt = backtrack_bound(gr, 4 * gr.num_edges(), opt);
    j["backtrack_min_slack"] = bt.min_slack();
    j["backtrack_all_return"] = bt.all_return();
  }
  if (matrices) {
    j["adjacency"] = matrix_to_json(adjacency_matrix(gr));
    j["hashimoto"] = matrix_to_json(hashimoto_matrix(gr));
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-independence toolkit for two-spin systems on small graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Global g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--tol", g.tol, "numerical tolerance for eigen computations");
  app.add_option("--threads", g.threads, "worker threads (default: SPECGLAUBER_THREADS or all cores)");
  app.add_option("--out", g.out, "write output to this file");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // spectra
  auto* spectra = app.add_subcommand("spectra", "adjacency and non-backtracking spectra");
  std::string sp_graph;
  bool sp_matrices = false;
  spectra->add_option("--graph", sp_graph, "corpus name or graph file")->required();
  spectra->add_flag("--matrices", sp_matrices, "include A and H in the output");

  // influence
  auto* influence = app.add_subcommand("influence", "pairwise influence matrix");
  std::string in_graph, in_boundary, in_method = "both";
  ModelArgs in_model;
  influence->add_option("--graph", in_graph)->required();
  add_model_options(influence, in_model);
  influence->add_option("--boundary", in_boundary, "JSON text or file: {\"pins\":{\"3\":1}}");
  influence->add_option("--method", in_method)->check(CLI::IsMember({"exact", "saw", "both"}));

  // verify
  auto* verify = app.add_subcommand("verify", "check one spectral bound or identity");
  std::string vf_graph, vf_boundary, vf_bound, vf_weights = "kappa";
  double vf_eps = 0.2;
  ModelArgs vf_model;
  verify->add_option("--graph", vf_graph)->required();
  add_model_options(verify, vf_model);
  verify->add_option("--boundary", vf_boundary);
  verify->add_option("--bound", vf_bound, "THM_5_2, THM_5_3, THM_5_5, THM_5_6, THM_8_1, THM_11_2")
      ->required();
  verify->add_option("--eps", vf_eps);
  verify->add_option("--weights", vf_weights, "edge weights for THM_8_1")
      ->check(CLI::IsMember({"kappa", "identity"}));

  // glauber
  auto* glauber = app.add_subcommand("glauber", "Glauber dynamics diagnostics");
  std::string gl_graph, gl_boundary, gl_exact = "gap";
  ModelArgs gl_model;
  int gl_steps = 20, gl_points = 10;
  long gl_chains = 10000;
  glauber->add_option("--graph", gl_graph)->required();
  add_model_options(glauber, gl_model);
  glauber->add_option("--boundary", gl_boundary);
  glauber->add_option("--steps", gl_steps);
  glauber->add_option("--chains", gl_chains);
  glauber->add_option("--tv-points", gl_points, "number of points on the TV curve");
  glauber->add_option("--exact", gl_exact)->check(CLI::IsMember({"gap", "tmix", "both", "none"}));

  // potential
  auto* potential = app.add_subcommand("potential", "verify the hard-core potential function");
  double pt_lambda = 1.0;
  int pt_delta = 3, pt_grid = 4096;
  std::optional<double> pt_s, pt_delta0, pt_c;
  potential->add_option("--model", in_model.model)->check(CLI::IsMember({"hardcore"}));
  potential->add_option("--lambda", pt_lambda)->required();
  potential->add_option("--delta-max", pt_delta);
  potential->add_option("--grid", pt_grid);
  potential->add_option("--s", pt_s, "override s0");
  potential->add_option("--delta", pt_delta0, "override the contraction rate");
  potential->add_option("--c", pt_c, "override the boundedness constant");

  // report
  auto* report = app.add_subcommand("report", "run an experiment spec");
  std::string rp_spec;
  report->add_option("--spec", rp_spec, "experiment spec JSON file")->required();

  // corpus
  auto* corpus = app.add_subcommand("corpus", "list corpus graphs or print one");
  std::string cp_name, cp_set = "small";
  corpus->add_option("--name", cp_name, "print this graph as JSON");
  corpus->add_option("--set", cp_set)->check(CLI::IsMember({"small", "spectral"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const int threads = g.threads > 0 ? g.threads : default_threads();
  PerronOptions popt;
  popt.tol = g.tol;

  try {
    if (*spectra) {
      const auto gr = load_graph(sp_graph);
      emit(g, spectra_json(sp_graph, gr, popt, sp_matrices));
      return 0;
    }
    if (*influence) {
      const auto gr = load_graph(in_graph);
      const auto p = in_model.params();
      const auto b = load_boundary(in_boundary);
      json j{{"graph", in_graph}, {"params", p.describe()}, {"boundary", boundary_to_json(b)}};
      std::optional<LabeledMatrix> ex, saw;
      if (in_method != "saw") ex = influence_matrix_exact(gr, p, b);
      if (in_method != "exact") saw = influence_saw(gr, p, b);
      if (ex) j["exact"] = matrix_to_json(*ex);
      if (saw) j["saw"] = matrix_to_json(*saw);
      if (ex && saw)
        j["max_difference"] =
            ex->rows() ? (ex->entries() - saw->entries()).cwiseAbs().maxCoeff() : 0.0;
      const auto& main = saw ? *saw : *ex;
      emit(g, j, matrix_to_csv(main));
      return 0;
    }
    if (*verify) {
      const auto gr = load_graph(vf_graph);
      const auto p = vf_model.params();
      const auto b = load_boundary(vf_boundary);
      BoundOptions opt;
      opt.perron = popt;
      opt.grid.seed = g.seed;
      opt.weights = vf_weights == "kappa" ? EdgeWeights::kappa : EdgeWeights::identity;
      const auto r = verify_bound(parse_bound_id(vf_bound), gr, p, b, vf_eps, opt);
      json d = json::object();
      for (const auto& [k, v] : r.details) d[k] = v;
      json j{{"bound_id", to_string(r.bound_id)}, {"status", to_string(r.status)},
             {"pass", r.pass()},                  {"lhs", r.lhs},
             {"rhs", r.rhs},                      {"instance", vf_graph + " " + r.instance},
             {"details", d}};
      if (!r.reason.empty()) j["reason"] = r.reason;
      emit(g, j);
      return r.status == BoundStatus::fail ? 1 : 0;
    }
    if (*glauber) {
      const auto gr = load_graph(gl_graph);
      const auto p = gl_model.params();
      const auto b = load_boundary(gl_boundary);
      json j{{"graph", gl_graph}, {"params", p.describe()}, {"boundary", boundary_to_json(b)}};
      const auto tm = transition_matrix(gr, p, b);
      j["states"] = tm.size();
      if (gl_exact == "gap" || gl_exact == "both") {
        const auto sg = spectral_gap(tm);
        j["second_eig"] = sg.second_eig;
        j["gap"] = sg.gap;
      }
      if (gl_exact == "tmix" || gl_exact == "both") j["tmix"] = mixing_time_exact(tm);
      json curve = json::array();
      std::string csv = "t,tv,exact_tv,tolerance\n";
      const int pts = std::max(gl_points, 1);
      for (int k = 0; k <= pts; ++k) {
        const int t = static_cast<int>(static_cast<long>(gl_steps) * k / pts);
        const auto e = empirical_tv(gr, p, b, t, gl_chains, g.seed, threads);
        curve.push_back({{"t", t}, {"tv", e.tv}, {"exact_tv", e.exact_tv}, {"tolerance", e.tolerance}});
        csv += std::to_string(t) + "," + format_double(e.tv) + "," + format_double(e.exact_tv) +
               "," + format_double(e.tolerance) + "\n";
      }
      j["tv_curve"] = curve;
      emit(g, j, csv);
      return 0;
    }
    if (*potential) {
      const auto p = GibbsParams::hardcore(pt_lambda);
      auto pp = hc_potential_params(pt_lambda);
      if (pt_s) pp.s = *pt_s;
      if (pt_delta0) pp.delta = *pt_delta0;
      if (pt_c) pp.c = *pt_c;
      PotentialGrid grid;
      grid.delta_max = pt_delta;
      grid.points = pt_grid;
      grid.seed = g.seed;
      const auto r = verify_potential(p, pp, grid);
      json j{{"lambda", pt_lambda},
             {"s0", pp.s},
             {"delta0", pp.delta},
             {"c0", pp.c},
             {"delta_c", delta_c(pt_lambda)},
             {"contraction_slack", r.contraction_slack},
             {"boundedness_slack", r.boundedness_slack},
             {"multivariate_max_ratio", r.multivariate_max_ratio},
             {"pass", r.pass()}};
      if (r.witness) j["witness"] = {{"d", r.witness->d}, {"x", r.witness->x}, {"xi", r.witness->value}};
      emit(g, j);
      return r.pass() ? 0 : 1;
    }
    if (*report) {
      json spec_json;
      try {
        spec_json = json::parse(read_file(rp_spec));
      } catch (const json::exception& e) {
        throw PreconditionError(rp_spec + ": " + e.what());
      }
      auto spec = spec_from_json(spec_json);
      if (app.get_option("--seed")->count()) spec.seed = g.seed;
      const auto r = run(spec, threads);
      emit(g, to_json(r), report_to_csv(r));
      return r.exit_code();
    }
    if (*corpus) {
      if (!cp_name.empty()) {
        emit(g, graph_to_json(named_graph(cp_name)));
        return 0;
      }
      const auto list = cp_set == "small" ? small_corpus(g.seed) : spectral_corpus(g.seed);
      json arr = json::array();
      std::string csv = "name,n,m,max_degree\n";
      for (const auto& [name, gr] : list) {
        arr.push_back({{"name", name}, {"n", gr.num_vertices()}, {"m", gr.num_edges()},
                       {"max_degree", gr.max_degree()}});
        csv += name + "," + std::to_string(gr.num_vertices()) + "," +
               std::to_string(gr.num_edges()) + "," + std::to_string(gr.max_degree()) + "\n";
      }
      emit(g, arr, csv);
      return 0;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

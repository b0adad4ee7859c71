#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "specglauber/corpus.hpp"
#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"
#include "specglauber/matrix.hpp"
#include "specglauber/model.hpp"

namespace specglauber {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

/// Edge-list text: first non-comment line "n m", then m lines "u v".
/// '#' starts a comment.
inline Graph parse_graph_text(const std::string& text, const std::string& source = "<input>") {
  std::vector<std::vector<long long>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<int> linenos;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<long long> nums;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw GraphError(source + ":" + std::to_string(lineno) + ": bad integer '" + tok + "'");
      }
    }
    if (nums.empty()) continue;
    if (nums.size() != 2)
      throw GraphError(source + ":" + std::to_string(lineno) + ": expected two integers");
    rows.push_back(nums);
    linenos.push_back(lineno);
  }
  if (rows.empty()) throw GraphError(source + ": empty graph file");
  const long long n = rows[0][0], m = rows[0][1];
  if (n < 0 || m < 0) throw GraphError(source + ": negative header counts");
  if (static_cast<long long>(rows.size()) - 1 != m)
    throw GraphError(source + ": header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(rows.size() - 1));
  EdgeList e;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    try {
      e.emplace_back(static_cast<Vertex>(rows[i][0]), static_cast<Vertex>(rows[i][1]));
      build_graph(static_cast<int>(n), {e.back()});
    } catch (const GraphError& err) {
      throw GraphError(source + ":" + std::to_string(linenos[i]) + ": " + err.what());
    }
  }
  return build_graph(static_cast<int>(n), e);
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw GraphError("graph JSON needs fields 'n' and 'edges'");
  EdgeList e;
  for (const auto& p : j.at("edges")) {
    if (!p.is_array() || p.size() != 2) throw GraphError("each edge must be a pair");
    e.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return build_graph(j.at("n").get<int>(), e);
}

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

/// A graph argument: a corpus name such as "grid:3x3", or a path to a .json
/// or edge-list file.
inline Graph load_graph(const std::string& arg) {
  std::ifstream probe(arg);
  if (!probe) return named_graph(arg);
  const auto text = read_file(arg);
  if (arg.size() >= 5 && arg.substr(arg.size() - 5) == ".json") {
    try {
      return graph_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw GraphError(arg + ": " + e.what());
    } catch (const GraphError& e) {
      throw GraphError(arg + ": " + e.what());
    }
  }
  return parse_graph_text(text, arg);
}

/// {"pins": {"3": 1, "7": -1}}
inline Boundary boundary_from_json(const json& j) {
  Boundary b;
  if (j.is_null()) return b;
  if (!j.is_object() || !j.contains("pins") || !j.at("pins").is_object())
    throw PreconditionError("boundary JSON needs an object field 'pins'");
  for (const auto& [k, v] : j.at("pins").items()) {
    std::size_t used = 0;
    int vertex = 0;
    try {
      vertex = std::stoi(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || k.empty())
      throw PreconditionError("boundary key '" + k + "' is not a vertex id");
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
      throw PreconditionError("boundary spin for vertex " + k + " must be 1 or -1");
    b.pins[vertex] = v.get<int>();
  }
  return b;
}

inline json boundary_to_json(const Boundary& b) {
  json pins = json::object();
  for (const auto& [v, s] : b.pins) pins[std::to_string(v)] = s;
  return {{"pins", pins}};
}

inline json matrix_to_json(const LabeledMatrix& m) {
  json rows = json::array(), cols = json::array(), entries = json::array();
  for (const auto& l : m.row_labels()) rows.push_back(to_string(l));
  for (const auto& l : m.col_labels()) cols.push_back(to_string(l));
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    entries.push_back(r);
  }
  return {{"row_labels", rows}, {"col_labels", cols}, {"entries", entries}};
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// CSV with a header of column labels; the first column holds row labels.
inline std::string matrix_to_csv(const LabeledMatrix& m) {
  std::string out = "label";
  for (const auto& l : m.col_labels()) out += "," + to_string(l);
  out += "\n";
  for (int i = 0; i < m.rows(); ++i) {
    out += to_string(m.row_labels()[i]);
    for (int j = 0; j < m.cols(); ++j) out += "," + format_double(m(i, j));
    out += "\n";
  }
  return out;
}

}  // namespace specglauber

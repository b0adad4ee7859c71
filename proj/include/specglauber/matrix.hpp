#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "specglauber/errors.hpp"
#include "specglauber/graph.hpp"

namespace specglauber {

/// Row/column key: a vertex (second == -1) or an ordered pair such as an
/// oriented edge or a split-vertex.
struct Label {
  int first = 0;
  int second = -1;

  static constexpr Label vertex(Vertex v) { return {v, -1}; }
  static constexpr Label pair(int a, int b) { return {a, b}; }
  constexpr bool is_pair() const noexcept { return second >= 0; }
  constexpr auto operator<=>(const Label&) const = default;
};

inline std::string to_string(const Label& l) {
  return l.is_pair() ? std::to_string(l.first) + "-" + std::to_string(l.second)
                     : std::to_string(l.first);
}

inline std::vector<Label> vertex_labels(const std::vector<Vertex>& vs) {
  std::vector<Label> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(Label::vertex(v));
  return out;
}

inline std::vector<Label> edge_labels(const std::vector<OrientedEdge>& es) {
  std::vector<Label> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(Label::pair(e.tail, e.head));
  return out;
}

/// Dense real matrix with labelled rows and columns.
class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  LabeledMatrix(std::vector<Label> rows, std::vector<Label> cols)
      : rows_(std::move(rows)), cols_(std::move(cols)),
        m_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_.size()),
                                 static_cast<Eigen::Index>(cols_.size()))) {
    index(rows_, row_pos_);
    index(cols_, col_pos_);
  }
  LabeledMatrix(std::vector<Label> rows, std::vector<Label> cols, Eigen::MatrixXd m)
      : LabeledMatrix(std::move(rows), std::move(cols)) {
    if (m.rows() != m_.rows() || m.cols() != m_.cols())
      throw PreconditionError("entry array shape does not match the labels");
    m_ = std::move(m);
  }

  const std::vector<Label>& row_labels() const noexcept { return rows_; }
  const std::vector<Label>& col_labels() const noexcept { return cols_; }
  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return static_cast<int>(cols_.size()); }

  const Eigen::MatrixXd& entries() const noexcept { return m_; }
  Eigen::MatrixXd& entries() noexcept { return m_; }

  double& operator()(int i, int j) { return m_(i, j); }
  double operator()(int i, int j) const { return m_(i, j); }

  bool has_row(Label l) const { return row_pos_.count(l) != 0; }
  bool has_col(Label l) const { return col_pos_.count(l) != 0; }
  int row_index(Label l) const { return find(row_pos_, l, "row"); }
  int col_index(Label l) const { return find(col_pos_, l, "column"); }
  double at(Label r, Label c) const { return m_(row_index(r), col_index(c)); }
  double& at(Label r, Label c) { return m_(row_index(r), col_index(c)); }

  LabeledMatrix transpose() const { return {cols_, rows_, m_.transpose()}; }

 private:
  static void index(const std::vector<Label>& ls, std::map<Label, int>& pos) {
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (!pos.emplace(ls[i], static_cast<int>(i)).second)
        throw PreconditionError("duplicate label " + to_string(ls[i]));
  }
  static int find(const std::map<Label, int>& pos, Label l, const char* what) {
    const auto it = pos.find(l);
    if (it == pos.end())
      throw PreconditionError(std::string("no ") + what + " labelled " + to_string(l));
    return it->second;
  }

  std::vector<Label> rows_, cols_;
  std::map<Label, int> row_pos_, col_pos_;
  Eigen::MatrixXd m_;
};

inline LabeledMatrix operator*(const LabeledMatrix& a, const LabeledMatrix& b) {
  if (a.col_labels() != b.row_labels())
    throw PreconditionError("labels do not conform for multiplication");
  return {a.row_labels(), b.col_labels(), a.entries() * b.entries()};
}

/// Strongly connected components of the digraph with an arc i -> j whenever
/// m(i, j) != 0 (Tarjan). Components come out in reverse topological order.
inline std::vector<std::vector<int>> strong_components(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;

  // Iterative DFS: frame = (vertex, next column to try).
  std::vector<std::pair<int, int>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      bool descended = false;
      while (next < n) {
        const int w = next++;
        if (m(v, w) == 0.0) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

inline bool irreducible(const Eigen::MatrixXd& m) {
  return m.rows() > 0 && strong_components(m).size() == 1;
}

/// Largest singular value.
inline double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

/// Max absolute row sum.
inline double inf_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Max absolute row sum of D^{-1} X D for the diagonal D = diag(d).
inline double weighted_inf_norm(const LabeledMatrix& x, const Eigen::VectorXd& d) {
  if (x.rows() != x.cols() || d.size() != x.rows())
    throw PreconditionError("weighted norm needs a square matrix and matching weights");
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (!(d(i) > 0.0))
      throw PreconditionError("diagonal weight for " + to_string(x.row_labels()[i]) +
                              " is not strictly positive");
  const Eigen::MatrixXd y = d.cwiseInverse().asDiagonal() * x.entries() * d.asDiagonal();
  return inf_norm(y);
}

}  // namespace specglauber

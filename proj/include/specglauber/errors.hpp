#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace specglauber {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph input (self-loop, out-of-range endpoint, parse failure).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Conditioned distribution has empty support, or enumeration is too large.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// A marginal needed as a divisor is 0 or 1.
class DegenerateMarginalError : public Error {
 public:
  DegenerateMarginalError(const std::string& what, std::string label)
      : Error(what), label_(std::move(label)) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

/// Perron computation requested on a reducible matrix. Carries the strongly
/// connected components of the support digraph (as row indices).
class ReducibleError : public Error {
 public:
  ReducibleError(const std::string& what, std::vector<std::vector<int>> comps)
      : Error(what), components_(std::move(comps)) {}
  const std::vector<std::vector<int>>& components() const noexcept {
    return components_;
  }

 private:
  std::vector<std::vector<int>> components_;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace specglauber

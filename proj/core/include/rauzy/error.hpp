#pragma once

#include <stdexcept>
#include <string>

namespace rauzy {

// Every failure raised by the library derives from Error so callers can map
// the category to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad symbols, zero vectors, missing seeds.
class InputError : public Error {
 public:
  using Error::Error;
};

// Non-finite entries or a numerically meaningless request.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the mathematical domain of an operation (s outside (0,2],
// nonpositive Lyapunov gaps, words with forbidden symbols, empty windows).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Singular-value gap too small to define an attracting point or a repelling
// hyperplane.
class GapError : public Error {
 public:
  GapError(std::string which, const std::string& what)
      : Error(what), which_(std::move(which)) {}
  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

// Work estimate exceeds a configured cap.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double estimated_cost = 0.0)
      : Error(what), estimated_cost_(estimated_cost) {}
  double estimated_cost() const noexcept { return estimated_cost_; }

 private:
  double estimated_cost_;
};

// An internal invariant failed (e.g. a bisection that does not bracket).
class LogicError : public Error {
 public:
  using Error::Error;
};

}  // namespace rauzy

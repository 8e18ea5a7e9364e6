#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its domain (negative multiplicity, R <= 0, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Sampled data does not live on the grid an operation expects.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Series evaluation cannot reach the requested accuracy within its order cap.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, int required_order)
      : Error(what), required_order_(required_order) {}
  int required_order() const noexcept { return required_order_; }

 private:
  int required_order_;
};

/// Evaluation at a point where a difference quotient is undefined.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// An extrapolation schedule failed to show convergence.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A grid does not cover the region a check needs.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Input falls outside the scope where a check is proof-backed.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. unvalidated atom).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A truncated computation has a tail estimate too large to trust.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Unknown command-line verb, suite, or option value.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace dunkl

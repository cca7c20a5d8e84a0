#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace steklov {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the maximal existence interval or an admissible depth range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Geometric data that violates the hypotheses a computation relies on.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A claimed structural regime whose numeric preconditions do not hold.
class RegimePreconditionError : public HypothesisError {
 public:
  RegimePreconditionError(std::string regime, std::string predicate)
      : HypothesisError(regime + ": precondition violated: " + predicate),
        regime_(std::move(regime)),
        predicate_(std::move(predicate)) {}

  const std::string& regime() const noexcept { return regime_; }
  const std::string& predicate() const noexcept { return predicate_; }

 private:
  std::string regime_;
  std::string predicate_;
};

/// Numerical solver failure (ODE non-convergence, non-finite values).
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Spectra that cannot be compared (too short, different boundaries).
class SpectrumError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, expression or command line input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace steklov

#pragma once

#include <stdexcept>
#include <string>

namespace incexp {

/// Base of every error thrown by the library. `kind()` drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Kind { config, numerical };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Argument outside an evaluator's domain (negative lag, x beyond a calibrated range).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Kind::config, what) {}
};

/// Malformed model/test-function spec, bad constructor parameters, bad config.
class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error(Kind::config, what) {}
};

/// A hypothesis of the requested experiment does not hold for the chosen model.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(Kind::config, what) {}
};

/// Wick order j with j*zeta >= 1: rho^j is not locally integrable.
class UnsupportedOrder : public PreconditionError {
 public:
  explicit UnsupportedOrder(const std::string& what) : PreconditionError(what) {}
};

/// Quadrature non-convergence, failed circulant embedding, excessive synthesis bias.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(Kind::numerical, what) {}
};

}  // namespace incexp

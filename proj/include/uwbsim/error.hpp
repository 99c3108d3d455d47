#pragma once

#include <stdexcept>
#include <string>

namespace uwbsim {

// Exception hierarchy. The CLI maps these onto exit codes:
// ConfigError/DataError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates a type invariant (checked at construction).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (e.g. quantile at u = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data cannot support the requested computation (empty, degenerate, missing model).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: non-convergence, singular geometry.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace uwbsim

#pragma once

#include <stdexcept>
#include <string>

namespace polynorm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid inputs: malformed bodies, shape mismatches, bad parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Integer overflow in a combinatorial dimension, or a configured
/// dimension cap exceeded.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge within its iteration budget.
/// Carries the best membership violation achieved before giving up.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double achieved_violation)
      : Error(what), achieved_violation_(achieved_violation) {}

  double achieved_violation() const { return achieved_violation_; }

 private:
  double achieved_violation_;
};

/// File I/O and parse failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace polynorm

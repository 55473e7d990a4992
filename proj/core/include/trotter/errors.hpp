#pragma once

#include <stdexcept>
#include <string>

namespace trotter {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain an operation is defined on (time outside
/// [0, T], ill-formed grid, node not on grid, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A derivative was requested beyond the declared smoothness of a control.
class UnsupportedDerivative : public Error {
public:
  UnsupportedDerivative(int requested, int available);
  int requested() const noexcept { return requested_; }
  int available() const noexcept { return available_; }

private:
  int requested_;
  int available_;
};

/// Operator or state construction failed (bad size, non-finite sample).
class ConstructionError : public Error {
public:
  using Error::Error;
};

/// Two objects living on different spatial grids were combined.
class GridMismatch : public Error {
public:
  using Error::Error;
};

/// A precondition stated on the operation was violated.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An iterative or adaptive numerical procedure did not reach its target.
/// Carries the best accuracy estimate that was reached.
class AccuracyError : public Error {
public:
  AccuracyError(const std::string& what, double achieved);
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

/// A hard resource cap (dense matrix size, step count) would be exceeded.
class ResourceCapError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration (unknown key, wrong type, failed validation).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace trotter

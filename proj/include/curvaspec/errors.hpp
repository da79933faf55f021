#pragma once

#include <stdexcept>
#include <string>

namespace curvaspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or argument lies outside the coordinate domain (metric singular,
/// negative radius, stencil crossing the hyperbolic boundary, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A physical or numerical parameter is invalid (non-positive mass, bad
/// hypergeometric parameter, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The polar chart degenerates at r = 0.
class DegenerateCoordinateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A requested level is not a bound state of the hyperbolic problem.
class NotAdmissible : public DomainError {
 public:
  NotAdmissible(const std::string& what, double bound)
      : DomainError(what), bound_(bound) {}

  /// The strict upper bound on n + 1 for admissible levels.
  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

/// Wrong closed-form branch requested (the kappa = 0 case has no Gauss form).
class BranchError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// An iterative procedure (series, quadrature, eigensolver) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; usually means an energy that is not an
/// eigenvalue was fed into the series construction.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvaspec

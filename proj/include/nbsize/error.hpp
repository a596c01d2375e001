#pragma once

#include <stdexcept>
#include <string>

namespace nbsize {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs violate a documented configuration rule (margins, allocations, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested design cannot be sized (e.g. zero distance to the margin).
class InfeasibleDesign : public Error {
 public:
  using Error::Error;
};

/// The root finder was not given a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Mean-follow-up comparator requested for arms with different dispersion or dropout.
class UnsupportedComparator : public Error {
 public:
  using Error::Error;
};

/// A model fit hit the edge of the parameter space (e.g. an arm without events).
class BoundaryError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not reach its tolerance. Carries the best available estimate.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace nbsize

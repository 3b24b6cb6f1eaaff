#pragma once

#include <stdexcept>
#include <string>

namespace esvs {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested polynomial degree exceeds the supported cap.
struct DegreeOverflowError : Error {
  using Error::Error;
};

// A value left the representable range of double and no log-domain
// variant of the operation was requested.
struct MagnitudeOverflowError : Error {
  using Error::Error;
};

// Input violates a documented precondition (bad range, bad parity, ...).
struct DomainError : Error {
  using Error::Error;
};

// Mandel Q is undefined when the state carries no photons.
struct ZeroMeanPhotonError : DomainError {
  using DomainError::DomainError;
};

// A truncated Fock computation detected that its cutoff is too small
// to represent the state (norm leakage past the guard band).
struct InsufficientDimensionError : Error {
  using Error::Error;
};

// An iterative computation hit its term/evaluation budget before the
// tail bound dropped below tolerance. Carries the partial result.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& msg, double partial_value, double bound)
      : Error(msg), partial(partial_value), tail_bound(bound) {}
  double partial;
  double tail_bound;
};

// Two internally redundant computations disagreed beyond tolerance.
struct InternalInconsistencyError : Error {
  using Error::Error;
};

}  // namespace esvs

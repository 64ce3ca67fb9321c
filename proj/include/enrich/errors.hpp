#pragma once

#include <stdexcept>
#include <string>

namespace enrich {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Psi stays below 1 up to the radius of the decoration class.
struct NotSubcritical : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

// No object of the requested size exists (or the rejection cap was hit).
struct Infeasible : Error {
  using Error::Error;
};

struct NoObjectOfSize : Error {
  using Error::Error;
};

struct NoSimples : Error {
  using Error::Error;
};

// A sampler produced an object outside the enumerated support.
struct CorrectnessFailure : Error {
  using Error::Error;
};

struct InvariantViolation : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

}  // namespace enrich

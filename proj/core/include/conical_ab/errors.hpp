#pragma once

#include <stdexcept>
#include <string>

namespace conical_ab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent configuration (grid does not contain the shell radius, ...).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// The channel is of the wrong self-adjointness class for the requested
/// operation.
class UnsupportedChannel : public Error {
 public:
  using Error::Error;
};

/// The requested bound state does not exist (reality condition violated, no
/// sign change of the matching residual, non-real closed form).
class NoBoundState : public Error {
 public:
  using Error::Error;
};

/// The matching residual was evaluated exactly on a pole of the cotangent.
class PoleEncountered : public Error {
 public:
  using Error::Error;
};

/// Quadrature, series or bracketing failed to converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace conical_ab

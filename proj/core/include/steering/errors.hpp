#pragma once

#include <stdexcept>
#include <string>

namespace steering {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violated the invariant of the type it was used to construct.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Operands have incompatible sizes.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An operation's precondition does not hold for the given input.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// The ensemble does not average to the steerable reduced state.
class SteeringConditionViolated : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

// The scenario falls outside the argument (identical or orthogonal bases).
class DegenerateScenario : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

}  // namespace steering

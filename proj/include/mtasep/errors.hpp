#pragma once

#include <stdexcept>
#include <string>

namespace mtasep {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Label not present in the two-species catalog.
struct UnknownLabelError : Error {
  explicit UnknownLabelError(const std::string& label)
      : Error("unknown catalog label: " + label) {}
};

// Elimination found no usable pivot (exact zero for rationals, below
// threshold for floats).
struct SingularMatrixError : Error {
  using Error::Error;
};

// A resolvent factor I - c B of a scattering matrix is not invertible;
// the message names the offending spectral parameter.
struct SingularResolventError : Error {
  using Error::Error;
};

// A closed-form denominator vanished; the message names the factor.
struct DivisionByZeroError : Error {
  using Error::Error;
};

// The contour pre-flight scan found a resolvent pole on (or numerically
// touching) the integration circle.
struct PoleOnContourError : Error {
  using Error::Error;
};

// Doubling the node count still moves some kernel entry beyond tolerance.
struct QuadratureError : Error {
  using Error::Error;
};

// Simulation was asked to sample from a matrix with entries outside [0,1].
struct NonStochasticError : Error {
  using Error::Error;
};

// Bad argument (index out of range, parameter outside its domain, ...).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace mtasep

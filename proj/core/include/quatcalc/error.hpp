#pragma once

#include <stdexcept>
#include <string>

namespace quatcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical domain violation: inverting zero, non-normal input to a
/// normal-only decomposition, indefinite input to a square root.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input does not satisfy a structural precondition (shape, symmetry,
/// compatibility with the complex adjoint representation, partitions).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A spectral partition does not match the spectrum (unknown sphere, empty
/// side, overlap).
class PartitionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A resolvent was requested at (or numerically too close to) the spectrum.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double distance, double condition)
      : Error(what), distance_(distance), condition_(condition) {}

  double distance() const noexcept { return distance_; }
  double condition() const noexcept { return condition_; }

 private:
  double distance_;
  double condition_;
};

/// Two spectral sets cannot be separated by an admissible contour.
class SeparationError : public Error {
 public:
  SeparationError(const std::string& what, double separation)
      : Error(what), separation_(separation) {}

  double separation() const noexcept { return separation_; }

 private:
  double separation_;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace quatcalc

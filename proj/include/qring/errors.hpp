#pragma once

#include <stdexcept>
#include <string>

namespace qring {

/// Base of every error raised by the solver library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A special-function evaluation failed to converge or lost all precision.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a singular point (e.g. U at x = 0).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive quadrature did not reach its tolerance.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// The 3x3 coefficient system is numerically singular; e0 is not a root
/// or the state is not confined.
class DegenerateMatchingError : public Error {
 public:
  using Error::Error;
};

/// Bracketing root refinement ran out of iterations.
class RootRefinementError : public Error {
 public:
  using Error::Error;
};

}  // namespace qring

#pragma once

#include <stdexcept>
#include <string>

namespace maslov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or a point outside an operation's domain. CLI exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public DomainError {
 public:
  AlgebraMismatch() : DomainError("operands belong to different algebras") {}
};

// An integer output could not be decided reliably. CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IntegralityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace maslov

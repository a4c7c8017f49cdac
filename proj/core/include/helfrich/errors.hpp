#pragma once

#include <stdexcept>
#include <string>

namespace helfrich {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: a parameter or evaluation point is outside its admissible range.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its accuracy target.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Evaluation at r = 0 without requesting the axis limit.
class SingularAxis : public InputError {
 public:
  using InputError::InputError;
};

class VerticalTangent : public InputError {
 public:
  using InputError::InputError;
};

class DerivativeUnavailable : public InputError {
 public:
  using InputError::InputError;
};

class NonpositiveRadius : public InputError {
 public:
  using InputError::InputError;
};

/// The sphere constraint degenerates to 0 = 0: every radius is admissible.
class IdenticallyZero : public InputError {
 public:
  using InputError::InputError;
};

class OutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class InfeasibleJunction : public InputError {
 public:
  using InputError::InputError;
};

class OpenProfile : public InputError {
 public:
  using InputError::InputError;
};

class QuadratureFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The radical-cleared residual kept a component carrying the radical t.
class ResidueInT : public Error {
 public:
  using Error::Error;
};

}  // namespace helfrich

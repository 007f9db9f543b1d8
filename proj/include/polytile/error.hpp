#pragma once

#include <stdexcept>
#include <string>

namespace polytile {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: wrong shapes, unknown labels, violated
/// preconditions of an operation.
class InputError : public Error {
public:
  using Error::Error;
};

/// Text that could not be parsed (scalars, JSON documents).
class ParseError : public InputError {
public:
  using InputError::InputError;
};

/// Division by zero and similar field-level failures.
class ArithmeticError : public Error {
public:
  using Error::Error;
};

/// A configured size cap was exceeded (ground set, vertex enumeration, boxes).
class LimitError : public Error {
public:
  using Error::Error;
};

/// A structural fact that must hold for valid input was found false, e.g. a
/// convex vertex set without a unique extreme vertex.
class ContractViolation : public Error {
public:
  using Error::Error;
};

}  // namespace polytile

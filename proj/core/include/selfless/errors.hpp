#pragma once

#include <stdexcept>
#include <string>

namespace selfless {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live in different group presentations, or a factor index is
/// out of range for the presentation.
class PresentationMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: unknown generator, bad exponent, bad coefficient.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Precondition violation on an argument (dimension mismatch, k = 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The candidate unitary is the identity or fails the unitarity tolerance.
class InvalidUnitary : public Error {
 public:
  using Error::Error;
};

}  // namespace selfless

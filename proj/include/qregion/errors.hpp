#pragma once

#include <stdexcept>
#include <string>

namespace qregion {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent dimensions or subsystem bookkeeping.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A tensor product or channel power would exceed the configured size cap.
class DimensionLimitError : public Error {
 public:
  using Error::Error;
};

/// An object failed its invariants (density operator, CPTP, distribution).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qregion

#pragma once

#include <stdexcept>
#include <string>

namespace cobench {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration or arguments (wrong kind, empty range, mismatched sizes).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (benchmark files, instance documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Data that is well formed but rejected, e.g. an infeasible SFT label.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exact oracle refused an instance larger than its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Transport or protocol failure talking to a completion endpoint.
class EndpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace cobench

#pragma once

#include <stdexcept>
#include <string>

namespace mmdb {

/// Raised when an argument violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a sample is too small for the requested statistic (e.g. n < 2).
class DegenerateSampleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Raised when a table or file does not have the expected layout.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace mmdb

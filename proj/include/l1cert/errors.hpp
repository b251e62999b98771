#pragma once

#include <stdexcept>
#include <string>

namespace l1cert {

// Bad input: dimensions, ranges, malformed files. CLI exit code 2.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size guard refused the problem. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The LP engine could not produce a trustworthy answer. CLI exit code 4.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A valid request the toolkit deliberately does not handle
// (finite beta with the Euclidean observation norm). Exit code 2.
class UnsupportedError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace l1cert

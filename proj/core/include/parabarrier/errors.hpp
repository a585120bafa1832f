#pragma once

#include <stdexcept>
#include <string>

namespace parabarrier {

// Bad arguments: dimension mismatches, out-of-range parameters, malformed keys.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A parameter solve could not satisfy its side conditions (shrink loop exhausted,
// invalid operator-family parameters, ...).
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// The requested construction does not apply to the given data (missing Case
// certificate, missing exterior ball, concavity gate failed, scheme/operator
// mismatch).
class InapplicableError : public std::runtime_error {
 public:
  explicit InapplicableError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime numerical failure: divergence, NaN, degenerate time step, domain exit.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace parabarrier

#pragma once

#include <stdexcept>
#include <string>

namespace cfd {

/// Malformed input: bad indices, wrong graph class, unnormalized utilities.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested method cannot handle the instance's problem or graph class.
class RoutingError : public InputError {
 public:
  using InputError::InputError;
};

/// Brute-force search refused or aborted because the instance is too large.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfd

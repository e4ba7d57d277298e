#pragma once

#include <stdexcept>
#include <string>

namespace bcl {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A partition with an empty class was passed where a proper one is required.
class ImproperPartition : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive search would exceed its enumeration budget.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical routine failed to reach its requested accuracy.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcl

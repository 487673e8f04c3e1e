#pragma once

#include <stdexcept>
#include <string>

namespace turanforge {

// Precondition or malformed-input failure. Maps to CLI exit code 1.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Search or trial budget ran out before an exact answer was reached. Maps to exit code 2.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result failed its own re-verification. Maps to exit code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace turanforge

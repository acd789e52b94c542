#pragma once

#include <stdexcept>
#include <string>

namespace infopres {

// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An action outside the legal set was requested for a context.
class MaskedActionError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

// Malformed input files: configuration, CSV, weights.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infopres

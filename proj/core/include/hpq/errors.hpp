#pragma once

#include <stdexcept>
#include <string>

namespace hpq {

// Caller broke a documented precondition (bad index, wrong orientation, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input rejected by validation: non-convex sequence, out-of-range coordinates,
// collinear or cocircular configurations the structures do not support.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A structure would exceed its configured memory budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hpq

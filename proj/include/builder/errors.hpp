#pragma once

#include <stdexcept>
#include <string>

namespace builder {

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by exact (exponential) routines when the instance is too large.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A caller broke a documented precondition (duplicate edge, H already present, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace builder

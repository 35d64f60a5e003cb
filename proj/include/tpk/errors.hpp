#pragma once

#include <stdexcept>

namespace tpk {

// Thrown when an argument violates an operation's precondition
// (dimension mismatch, out-of-range parameter, malformed vector, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tpk

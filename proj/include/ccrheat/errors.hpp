#pragma once

#include <stdexcept>
#include <string>

namespace ccrheat {

// A discretization (grid extent, spacing, alignment) cannot support the
// requested computation at the required accuracy.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Convolution output would fall outside the target grid.
class SupportOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Fock truncation is too small for the requested operation.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constrained problem has no admissible solution at this size.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccrheat

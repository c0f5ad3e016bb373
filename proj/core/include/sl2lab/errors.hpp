#pragma once

#include <stdexcept>
#include <string>

namespace sl2lab {

// Error taxonomy used across the library.  Every throwing operation
// documents which of these it can raise.

// Two values from different (p, N) contexts were mixed.
struct ContextError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An argument is outside the operation's admissible range.
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured cap (enumeration size, linear-algebra dimension) would be
// exceeded.  The message names the cap that would be required.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A subgroup-containment precondition failed.
struct ContainmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value is outside the mathematical domain of the map being applied
// (e.g. a matrix outside G(p) fed to the coset action).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural identity the library relies on failed to hold; this is a
// suite failure, not a recoverable condition.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sl2lab

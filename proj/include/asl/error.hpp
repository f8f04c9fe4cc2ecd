#pragma once

#include <stdexcept>
#include <string>

namespace asl {

/// Input violates an operation's stated precondition (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical self-check failed: root modulus off the critical circle,
/// truncation inconsistency, non-convergent quadrature (CLI exit code 1).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace asl

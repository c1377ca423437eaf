#pragma once

#include <stdexcept>
#include <string>

namespace eqd {

// Bad input or a violated precondition. The CLI reports these with exit
// status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical invariant failed on validated input (a bug, or input that is
// numerically far outside the supported range). The CLI exits with status 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eqd

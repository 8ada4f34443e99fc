#pragma once

#include <stdexcept>
#include <string>

namespace specprop {

// Bad input: malformed files, violated preconditions, failed invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input was accepted but the numerics left their trusted regime
// (Hermiticity guard, aliasing guard).
class NumericalRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specprop

#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Invalid input: bad weights, exponent outside the accepted window, a test
/// function outside its declared class. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver could not produce a trustworthy answer (no sign change found,
/// non-finite intermediate). The CLI maps this to exit code 4.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardy

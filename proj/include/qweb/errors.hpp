#pragma once

#include <stdexcept>
#include <string>

namespace qweb {

/// Invalid user input (parameters, grid geometry, selectors). Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy result. Maps to CLI exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested level lies beyond the Fock-basis truncation n_max.
class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Extreme quasienergies coincide, so "upper" and "lower" are not defined.
class DegenerateSpectrumError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace qweb

#pragma once

#include <stdexcept>
#include <string>

namespace coblab {

/// Malformed user input: surd strings, out-of-range parameters, bad config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or selection produced fewer admissible candidates than required.
class Shortfall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate that must hold mathematically failed to verify. Indicates a
/// precision or implementation bug, never a property of the input.
class CertificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Adaptive precision reached kMaxPrecision without resolving a comparison
/// or meeting a width tolerance.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coblab

#pragma once

#include <stdexcept>
#include <string>

namespace qwsearch {

struct BoundsError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Operands live on different grids.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Side length violates a parity requirement (odd side, or m/2 even where the
// spectral decomposition needs m ≡ 2 mod 4).
struct ParityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SizeError : std::length_error {
  using std::length_error::length_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LowConfidenceError : NumericalError {
  using NumericalError::NumericalError;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qwsearch

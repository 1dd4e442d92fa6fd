#pragma once

#include <stdexcept>
#include <string>

namespace cybel {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (scalar literals, triple strings, lattice files).
struct ParseError : Error {
  using Error::Error;
};

/// Arithmetic that cannot be carried out exactly (division by zero or by a
/// zero divisor of a degenerate quadratic layer).
struct NonInvertibleError : Error {
  using Error::Error;
};

/// Operands belong to incompatible scalar towers.
struct TowerMismatchError : Error {
  using Error::Error;
};

}  // namespace cybel

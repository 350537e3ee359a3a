#pragma once

#include <stdexcept>
#include <string>

namespace qfa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation (non-square trace, mismatched Kraus sizes, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A machine, operation or projector set fails its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A word contains a symbol the machine does not know.
class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

/// A computed probability left [-1e-6, 1 + 1e-6]; indicates corrupted input or a library bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured word budget.
class EnumerationGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfa

#pragma once

#include <stdexcept>
#include <string>

namespace profet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simplicial or algebraic object violates its structural contract
/// (non-closed subobject, broken simplicial identity, unpointed input, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or construction would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A sequence of matrices that does not compose to zero.
class InvalidComplex : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (bad parameters, unparsable files, unknown names).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace profet

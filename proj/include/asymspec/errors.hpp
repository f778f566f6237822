#pragma once

#include <stdexcept>
#include <string>

namespace asymspec {

// Error taxonomy shared by the C++ core and the C API layer.  Each type
// maps to one asymspec_status code in asymspec.h.

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside its mathematical domain (x off [0,1], non-finite lambda, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Invalid argument combination (bad sizes, non-increasing sequences, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Iterative search failed to converge; message names the failing index.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Evaluation requested too close to a Dirichlet eigenvalue.
class PoleError : public Error {
public:
  PoleError(const std::string& what, double nearest) : Error(what), nearest_eigenvalue(nearest) {}
  double nearest_eigenvalue = 0.0;
};

/// Cross-checked quantities disagree beyond tolerance (bad input data or
/// numerical breakdown).
class InconsistencyError : public Error {
public:
  using Error::Error;
};

/// Operation precondition not met; message says how to fix the input.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed JSON or unknown/missing fields in a data file.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace asymspec

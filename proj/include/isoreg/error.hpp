#pragma once

#include <stdexcept>
#include <string>

namespace isoreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input data (empty sequences, non-finite
/// values, bad weights, length mismatches, unparsable CSV).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configuration that cannot be honoured (missing iteration cap,
/// oracle size limit, grid outside the trace).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Every entry of a selection grid was excluded by the criterion.
class DegenerateCriterion : public Error {
 public:
  using Error::Error;
};

}  // namespace isoreg

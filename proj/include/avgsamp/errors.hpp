#pragma once

#include <stdexcept>
#include <string>

namespace avgsamp {

// Base for every error raised by the library. Callers that only care about
// "something numerical went wrong" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (negative radius, empty grid...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// |û| dropped below the Riesz threshold somewhere on [-π, π].
class NotRieszBasis : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class DerivativeOrderExceeded : public Error {
 public:
  using Error::Error;
};

class NonRealKernel : public Error {
 public:
  using Error::Error;
};

class TabulationRangeExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace avgsamp

#pragma once

#include <stdexcept>
#include <string>

namespace mcmdeg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VariableMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct NotDivisible : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct DetNotPowerOfF : Error {
  using Error::Error;
};

struct NoStabilization : Error {
  using Error::Error;
};

struct UnsupportedRing : Error {
  using Error::Error;
};

struct VerificationFailure : Error {
  using Error::Error;
};

}  // namespace mcmdeg

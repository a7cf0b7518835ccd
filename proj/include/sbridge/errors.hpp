#pragma once

#include <stdexcept>
#include <string>

namespace sbridge {

// Base of every error raised by the library. `kind()` is the stable name used
// in CLI diagnostics and reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Malformed input (file formats, out-of-range parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

// A certificate or invariant check failed on otherwise valid input.
class CertificateError : public Error {
 public:
  using Error::Error;
};

#define SBRIDGE_DEFINE_ERROR(Name, Base)                                    \
  class Name : public Base {                                               \
   public:                                                                 \
    explicit Name(const std::string& what) : Base(#Name, what) {}          \
  };

SBRIDGE_DEFINE_ERROR(ParseError, InputError)
SBRIDGE_DEFINE_ERROR(InvalidBraid, InputError)
SBRIDGE_DEFINE_ERROR(StepLimitExceeded, Error)
SBRIDGE_DEFINE_ERROR(ZeroPolynomial, InputError)
SBRIDGE_DEFINE_ERROR(ZeroDirection, InputError)
SBRIDGE_DEFINE_ERROR(NormViolation, InputError)
SBRIDGE_DEFINE_ERROR(InvalidCurve, InputError)
SBRIDGE_DEFINE_ERROR(GenericityFailure, Error)
SBRIDGE_DEFINE_ERROR(InvalidParams, InputError)
SBRIDGE_DEFINE_ERROR(InvalidTorusParams, InputError)
SBRIDGE_DEFINE_ERROR(FreeStrandRequired, InputError)
SBRIDGE_DEFINE_ERROR(NotAKnot, InputError)
SBRIDGE_DEFINE_ERROR(CrossingViolation, Error)
SBRIDGE_DEFINE_ERROR(BoundViolation, CertificateError)

#undef SBRIDGE_DEFINE_ERROR

}  // namespace sbridge

#pragma once

#include <stdexcept>
#include <string>

namespace irlc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct AxisSingularity : Error { using Error::Error; };
struct PointSingularity : Error { using Error::Error; };
struct NonIntegrablePairing : Error { using Error::Error; };
struct ToleranceNotMet : Error { using Error::Error; };
struct SupportNotInForwardCone : Error { using Error::Error; };
struct SupportPreconditionViolation : Error { using Error::Error; };
struct ResolutionFailure : Error { using Error::Error; };

// carries the 1-based line of the offending config entry (0 when unknown)
struct ConfigError : Error {
  int line = 0;
  ConfigError(const std::string& what, int line_no) : Error(what), line(line_no) {}
};

}  // namespace irlc

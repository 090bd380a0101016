#pragma once

#include <stdexcept>
#include <string>

namespace snowsim {

/// Error categories surfaced through the C API as status codes. The string
/// message carried by SimError is the human-readable signal; the code is the
/// stable machine-readable one.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NoSuchQubit = 2,
  SelfFusion = 3,
  EmptyInput = 4,
  NotConnected = 5,
  Timeout = 6,
  InsufficientPerimeter = 7,
  NoFeasibleSchedule = 8,
  GridCapped = 9,
  NoTrials = 10,
  InsufficientData = 11,
  Internal = 12,
};

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace snowsim

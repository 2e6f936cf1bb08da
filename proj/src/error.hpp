#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zkd {

// Error categories shared by every module. The numeric values are part of the
// C API (see zkdisp.h) and must stay stable.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kSymmetryViolation = 2,
  kBackwardHeat = 3,
  kDivergence = 4,
  kInvalidInitialData = 5,
  kInsufficientData = 6,
  kCertificateViolation = 7,
  kBoundUndefined = 8,
  kDomain = 9,
  kParse = 10,
  kValidation = 11,
  kIo = 12,
  kInternal = 13,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace zkd

#include "error.hpp"

namespace zkd {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kSymmetryViolation: return "symmetry-violation";
    case ErrorCode::kBackwardHeat: return "backward-heat";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kInvalidInitialData: return "invalid-initial-data";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kCertificateViolation: return "certificate-violation";
    case ErrorCode::kBoundUndefined: return "bound-undefined";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace zkd

#include "mdse/error.hpp"

namespace mdse {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Frozen: return "Frozen";
    case ErrorCode::LoopDetected: return "LoopDetected";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::BadDirection: return "BadDirection";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::ZeroHypotheses: return "ZeroHypotheses";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::NotValid: return "NotValid";
    case ErrorCode::ValueExceedsOne: return "ValueExceedsOne";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonMonotoneSizes: return "NonMonotoneSizes";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mdse

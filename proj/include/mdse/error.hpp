#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdse {

enum class ErrorCode {
  NotNormalized,
  OutOfRange,
  Frozen,
  LoopDetected,
  DuplicateEdge,
  BadDirection,
  UnknownId,
  LengthMismatch,
  EmptyInput,
  ZeroTotal,
  ZeroHypotheses,
  ZeroEvidence,
  NotValid,
  ValueExceedsOne,
  TooLarge,
  Infeasible,
  SyntaxError,
  SchemaError,
  TooFewPoints,
  NonMonotoneSizes,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace mdse

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bsespec {

enum class ErrorCode {
  DimensionMismatch = 1,
  StructureViolation,
  NotDefinite,
  InvalidSteps,
  ZeroStartVector,
  NotRealField,
  IndefiniteInnerProduct,
  BasisNotRetained,
  InsufficientSteps,
  BreakdownExact,
  ConvergenceFailure,
  MultipleNonpositiveNodes,
  OddStepCount,
  SingularProjection,
  NeutralVectorBreakdown,
  GramFactorizationFailure,
  ZeroNormCurve,
  ParseError,
  IoError,
  InvalidConfig,
};

std::string_view error_name(ErrorCode code) noexcept;

// Process exit status for a failed job; distinct per code, never 0 or 1.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bsespec

#include "bsespec/error.hpp"

namespace bsespec {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::NotDefinite: return "NotDefinite";
    case ErrorCode::InvalidSteps: return "InvalidSteps";
    case ErrorCode::ZeroStartVector: return "ZeroStartVector";
    case ErrorCode::NotRealField: return "NotRealField";
    case ErrorCode::IndefiniteInnerProduct: return "IndefiniteInnerProduct";
    case ErrorCode::BasisNotRetained: return "BasisNotRetained";
    case ErrorCode::InsufficientSteps: return "InsufficientSteps";
    case ErrorCode::BreakdownExact: return "BreakdownExact";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::MultipleNonpositiveNodes: return "MultipleNonpositiveNodes";
    case ErrorCode::OddStepCount: return "OddStepCount";
    case ErrorCode::SingularProjection: return "SingularProjection";
    case ErrorCode::NeutralVectorBreakdown: return "NeutralVectorBreakdown";
    case ErrorCode::GramFactorizationFailure: return "GramFactorizationFailure";
    case ErrorCode::ZeroNormCurve: return "ZeroNormCurve";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

// 0 is success and 1 is left to CLI11's own usage errors.
int exit_code_for(ErrorCode code) noexcept { return 10 + static_cast<int>(code); }

}  // namespace bsespec

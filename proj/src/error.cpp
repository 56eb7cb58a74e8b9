#include "sawi/error.hpp"

namespace sawi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::OutOfSupportedRange: return "OutOfSupportedRange";
    case ErrorCode::OutOfRegion: return "OutOfRegion";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ContourFailure: return "ContourFailure";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::MixedBase: return "MixedBase";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::SingularStep: return "SingularStep";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sawi

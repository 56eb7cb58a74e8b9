#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sawi {

// Numeric values are mirrored by sawi_status in sawi.h and must stay in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  InvalidOrder = 2,
  NonConvergence = 3,
  OutOfSupportedRange = 4,
  OutOfRegion = 5,
  ArityMismatch = 6,
  QuadratureFailure = 7,
  ContourFailure = 8,
  BranchCut = 9,
  MixedBase = 10,
  NotInvertible = 11,
  GridTooCoarse = 12,
  SingularStep = 13,
  Internal = 99,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace sawi

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sawi {

enum class Suite { Ml, Sawi, Ops, Solutions, All };

/// Throws InvalidArgument for names other than ml, sawi, ops, solutions, all.
Suite parse_suite(std::string_view name);

struct ValidateOptions {
  /// Replaces the time step of the operator and residual checks; the
  /// refinement-ratio check starts from it.
  std::optional<double> dt;
  /// Series tolerance passed to the Mittag-Leffler evaluations of the ml suite.
  std::optional<double> tol;
  bool serial = false;
};

/// One measured quantity. A check with at_least set passes when
/// measured >= bound, otherwise when measured < bound. Non-finite measurements fail.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool at_least = false;
  bool pass = false;
  /// Exception text when the quantity could not be computed.
  std::string note;
};

/// A numbered acceptance criterion; passes when every check passes within
/// time_limit seconds (no limit when time_limit is 0).
struct Criterion {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  double time_limit = 0.0;

  bool pass() const;
};

/// The ten acceptance criteria at their fixed settings (options.dt is ignored).
std::vector<Criterion> run_acceptance(const ValidateOptions& options = {});

/// Acceptance criteria belonging to the suite plus its invariant checks.
/// An exception inside a check is reported as a failing check named after it.
std::vector<CheckResult> run_suite(Suite suite, const ValidateOptions& options = {});

}  // namespace sawi

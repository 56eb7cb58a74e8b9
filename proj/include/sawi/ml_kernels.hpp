#pragma once

#include <complex>
#include <vector>

namespace sawi {

using cplx = std::complex<double>;

/// Default truncation tolerance for Mittag-Leffler series.
inline constexpr double kSeriesTol = 1e-15;

/// Hard cap on the number of series terms before NonConvergence.
inline constexpr int kSeriesTermCap = 2000;

/// Largest |z| served by the power series; larger arguments are rejected.
inline constexpr double kMaxSeriesArgument = 50.0;

/// Parameters of a Prabhakar kernel t^{rho-1} E^{gamma}_{alpha,rho}(omega t^alpha).
///
/// alpha is the order of the Mittag-Leffler function (must be positive),
/// rho the kernel's power-law order, gamma the Pochhammer exponent (any real,
/// negative values give the inverse operators) and omega the complex frequency
/// scaling the argument.
struct KernelSpec {
  double alpha = 1.0;
  double rho = 1.0;
  double gamma = 1.0;
  cplx omega{0.0, 0.0};

  /// Throws InvalidOrder when alpha <= 0 and InvalidArgument on non-finite fields.
  void validate() const;
};

struct EvalResult {
  cplx value{0.0, 0.0};
  /// Estimated bound on the dropped tail of the series.
  double est_error = 0.0;
  int terms_used = 0;
  /// Largest term magnitude seen; eps * max_term bounds the summation roundoff.
  double max_term = 0.0;
};

/// Rising factorial (gamma)_k with (gamma)_0 = 1. May overflow to +inf.
double pochhammer(double gamma, int k);

/// 1 / Gamma(x), zero at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Three-parameter Mittag-Leffler function E^{gamma}_{alpha,rho}(z).
///
/// Sums the power series with compensated accumulation and stops once the
/// geometric tail estimate drops below tol * max(1, |partial sum|). Terms
/// whose Gamma argument sits on a pole contribute zero.
///
/// Throws InvalidOrder for alpha <= 0, OutOfSupportedRange for
/// |z| > kMaxSeriesArgument and NonConvergence at kSeriesTermCap terms.
EvalResult ml3(double alpha, double rho, double gamma, cplx z,
               double tol = kSeriesTol);

/// Tolerance for which ml3's stopping rule is relative to the leading term
/// 1/Gamma(rho) even when that term is far below one.
double relative_series_tol(double rho, double tol = kSeriesTol);

/// Two-parameter function E_{alpha,rho}(z), the gamma = 1 case of ml3.
EvalResult ml2(double alpha, double rho, cplx z, double tol = kSeriesTol);

/// One-parameter function E_{alpha}(z), the rho = gamma = 1 case of ml3.
EvalResult ml1(double alpha, cplx z, double tol = kSeriesTol);

/// Running partial sums produced by ml3, one entry per term.
std::vector<cplx> ml3_partial_sums(double alpha, double rho, double gamma,
                                   cplx z, double tol = kSeriesTol);

/// Pointwise kernel value t^{rho-1} E^{gamma}_{alpha,rho}(omega t^alpha), t > 0.
/// Throws InvalidOrder when rho <= 0.
cplx prabhakar_kernel(const KernelSpec& spec, double t, double tol = kSeriesTol);

/// Exact integral of the kernel over [0, t]: t^rho E^{gamma}_{alpha,rho+1}(omega t^alpha).
/// Returns 0 at t = 0. Throws InvalidOrder when rho <= 0.
cplx kernel_antiderivative(const KernelSpec& spec, double t,
                           double tol = kSeriesTol);

/// order-fold integral of the kernel over [0, t],
/// t^{rho+order-1} E^{gamma}_{alpha,rho+order}(omega t^alpha).
///
/// Accepts rho = 0, in which case the first primitive carries the unit mass of
/// the order-zero operator (it tends to 1/Gamma(1) = 1 as t -> 0+, while the
/// value at t = 0 itself is defined as 0).
cplx kernel_primitive(const KernelSpec& spec, double t, int order,
                      double tol = kSeriesTol);

}  // namespace sawi

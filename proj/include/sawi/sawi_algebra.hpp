#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sawi/ml_kernels.hpp"

namespace sawi {

/// Real exponent kept as an exact rational while inputs allow it.
///
/// A double is read as a rational when some denominator <= 1e6 reproduces it
/// exactly; sums stay exact until numerator or denominator outgrow 1e12.
class Exponent {
 public:
  Exponent() = default;
  Exponent(double x);  // NOLINT(google-explicit-constructor)
  static Exponent rational(std::int64_t num, std::int64_t den);
  /// Binary64-only exponent, never treated as exact.
  static Exponent inexact(double x);

  double value() const noexcept { return value_; }
  bool exact() const noexcept { return exact_; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return exact_ ? num_ == 0 : value_ == 0.0; }

  Exponent operator-() const;
  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }
  friend Exponent operator*(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b);

  /// "p/q" (or "p") when exact, shortest round-trip decimal otherwise.
  std::string str() const;

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double value_ = 0.0;
};

/// coef * s^mu * (1 - omega s^alpha)^{-kappa}.
struct SawiAtom {
  cplx coef{1.0, 0.0};
  Exponent mu;
  Exponent kappa;
  double alpha = 1.0;
  cplx omega{0.0, 0.0};
};

/// coef * t^power * E^{gamma}_{alpha,beta}(omega t^alpha).
struct TimeTerm {
  cplx coef{1.0, 0.0};
  double power = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  cplx omega{0.0, 0.0};
};

/// Truncated geometric expansion P A^{-1} sum_{n=0}^{N} (-B A^{-1})^n.
struct AtomSeries {
  std::vector<SawiAtom> atoms;
  int truncation_index = 0;
  /// |B(s_probe) / A(s_probe)|.
  double ratio_bound = 0.0;
  /// ratio_bound >= 1: the s-domain series is not known to converge.
  bool divergent = false;
};

/// Throws BranchCut when omega is real, kappa != 0 and 1 - omega s^alpha <= 0.
cplx atom_eval(const SawiAtom& a, double s);

/// Principal-branch continuation to complex s (used by the contour inversion).
cplx atom_eval(const SawiAtom& a, cplx s);

/// Coefficients multiply, exponents add. Atoms with kappa = 0 carry no base,
/// so MixedBase is raised only when both kappas are nonzero and (alpha, omega) differ.
SawiAtom atom_mul(const SawiAtom& a, const SawiAtom& b);

/// Multiplicative inverse; throws NotInvertible for a zero coefficient.
SawiAtom atom_inv(const SawiAtom& a);

/// First N + 1 atoms of P / (A + B). Throws InvalidArgument for N < 0.
AtomSeries geometric_expand(const SawiAtom& P, const SawiAtom& A, const SawiAtom& B, int N,
                            double s_probe);

/// Inverse image coef t^{mu+1} E^{kappa}_{alpha,mu+2}(omega t^alpha).
/// Throws NotInvertible when mu + 2 <= 0.
TimeTerm invert_atom(const SawiAtom& a);

/// Sum of time terms at t > 0.
///
/// est_error adds the Mittag-Leffler truncation estimates to a geometric tail
/// bound built from the last two term magnitudes.
EvalResult series_eval_time(const std::vector<TimeTerm>& terms, double t, double tol = kSeriesTol);

/// One line per atom: n, coef re, coef im, mu, kappa, then the inverted
/// term's power, beta, gamma (or "-" when not invertible), tab-separated.
std::string render_trace(const AtomSeries& series);

}  // namespace sawi

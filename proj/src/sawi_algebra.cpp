#include "sawi/sawi_algebra.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "sawi/error.hpp"
#include "sawi/format.hpp"
#include "sawi/summation.hpp"

namespace sawi {

namespace {

__extension__ using i128 = __int128;

constexpr std::int64_t kRecoverDenMax = 1'000'000;
constexpr std::int64_t kExactLimit = 1'000'000'000'000;

bool recover_rational(double x, std::int64_t& num, std::int64_t& den) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return false;
  // Continued-fraction convergents h/k of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const i128 h2 = static_cast<i128>(ai) * h1 + h0;
    const i128 k2 = static_cast<i128>(ai) * k1 + k0;
    if (k2 > kRecoverDenMax || h2 > kExactLimit || h2 < -kExactLimit) return false;
    h0 = h1;
    h1 = static_cast<std::int64_t>(h2);
    k0 = k1;
    k1 = static_cast<std::int64_t>(k2);
    if (static_cast<double>(h1) / static_cast<double>(k1) == x) {
      num = h1;
      den = k1;
      return true;
    }
    const double frac = r - a;
    if (frac == 0.0) return false;
    r = 1.0 / frac;
  }
  return false;
}

bool same_base(const SawiAtom& a, const SawiAtom& b) { return a.alpha == b.alpha && a.omega == b.omega; }

}  // namespace

Exponent::Exponent(double x) : value_(x) {
  exact_ = recover_rational(x, num_, den_);
  if (!exact_) {
    num_ = 0;
    den_ = 1;
  }
}

Exponent Exponent::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "Exponent: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  Exponent e;
  e.num_ = num / (g == 0 ? 1 : g);
  e.den_ = den / (g == 0 ? 1 : g);
  e.exact_ = true;
  e.value_ = static_cast<double>(e.num_) / static_cast<double>(e.den_);
  return e;
}

Exponent Exponent::operator-() const {
  Exponent e = *this;
  e.num_ = -num_;
  e.value_ = -value_;
  return e;
}

namespace {

// Exact result when the reduced fraction fits the exact range.
bool reduce_exact(i128 num, i128 den, Exponent& out) {
  i128 x = num < 0 ? -num : num, y = den;
  while (y != 0) {
    const i128 t = x % y;
    x = y;
    y = t;
  }
  const i128 d = x == 0 ? 1 : x;
  const i128 rn = num / d, rd = den / d;
  if (rd > kExactLimit || rn > kExactLimit || rn < -kExactLimit) return false;
  out = Exponent::rational(static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd));
  return true;
}

}  // namespace

Exponent Exponent::inexact(double x) {
  Exponent e;
  e.exact_ = false;
  e.value_ = x;
  return e;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) {
    Exponent out;
    if (reduce_exact(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_, out)) {
      return out;
    }
  }
  return Exponent::inexact(a.value_ + b.value_);
}

Exponent operator*(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) {
    Exponent out;
    if (reduce_exact(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_, out)) return out;
  }
  return Exponent::inexact(a.value_ * b.value_);
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.value_ == b.value_;
}

std::string Exponent::str() const {
  if (!exact_) return shortest(value_);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

cplx atom_eval(const SawiAtom& a, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorCode::InvalidArgument, "atom_eval: s must be positive");
  const cplx power = std::pow(s, a.mu.value());
  if (a.kappa.is_zero()) return a.coef * power;
  const cplx base = 1.0 - a.omega * std::pow(s, a.alpha);
  if (base.imag() == 0.0) {
    if (!(base.real() > 0.0)) {
      std::ostringstream os;
      os << "atom_eval: 1 - omega s^alpha = " << base.real() << " lies on the branch cut at s = " << s;
      fail(ErrorCode::BranchCut, os.str());
    }
    return a.coef * power * std::pow(base.real(), -a.kappa.value());
  }
  return a.coef * power * std::pow(base, -a.kappa.value());
}

cplx atom_eval(const SawiAtom& a, cplx s) {
  const cplx power = std::pow(s, a.mu.value());
  if (a.kappa.is_zero()) return a.coef * power;
  const cplx base = 1.0 - a.omega * std::pow(s, a.alpha);
  return a.coef * power * std::pow(base, -a.kappa.value());
}

SawiAtom atom_mul(const SawiAtom& a, const SawiAtom& b) {
  if (!a.kappa.is_zero() && !b.kappa.is_zero() && !same_base(a, b)) {
    std::ostringstream os;
    os << "atom_mul: bases differ, (alpha, omega) = (" << a.alpha << ", " << a.omega << ") vs ("
       << b.alpha << ", " << b.omega << ")";
    fail(ErrorCode::MixedBase, os.str());
  }
  const SawiAtom& based = a.kappa.is_zero() ? b : a;
  SawiAtom out;
  out.coef = a.coef * b.coef;
  out.mu = a.mu + b.mu;
  out.kappa = a.kappa + b.kappa;
  out.alpha = based.alpha;
  out.omega = based.omega;
  return out;
}

SawiAtom atom_inv(const SawiAtom& a) {
  if (a.coef == cplx{0.0, 0.0}) fail(ErrorCode::NotInvertible, "atom_inv: zero coefficient");
  SawiAtom out = a;
  out.coef = 1.0 / a.coef;
  out.mu = -a.mu;
  out.kappa = -a.kappa;
  return out;
}

AtomSeries geometric_expand(const SawiAtom& P, const SawiAtom& A, const SawiAtom& B, int N,
                            double s_probe) {
  if (N < 0) fail(ErrorCode::InvalidArgument, "geometric_expand: N must be nonnegative");
  const SawiAtom a_inv = atom_inv(A);
  const SawiAtom lead = atom_mul(P, a_inv);
  AtomSeries out;
  out.truncation_index = N;
  if (B.coef == cplx{0.0, 0.0}) {
    out.atoms.push_back(lead);
    out.ratio_bound = 0.0;
    return out;
  }
  SawiAtom ratio = atom_mul(B, a_inv);
  ratio.coef = -ratio.coef;
  out.atoms.reserve(static_cast<std::size_t>(N) + 1);
  SawiAtom term = lead;
  for (int n = 0; n <= N; ++n) {
    out.atoms.push_back(term);
    if (n < N) term = atom_mul(term, ratio);
  }
  out.ratio_bound = std::abs(atom_eval(B, s_probe) / atom_eval(A, s_probe));
  out.divergent = out.ratio_bound >= 1.0;
  return out;
}

TimeTerm invert_atom(const SawiAtom& a) {
  const double beta = (a.mu + Exponent::rational(2, 1)).value();
  if (!(beta > 0.0)) {
    std::ostringstream os;
    os << "invert_atom: mu + 2 = " << beta << " must be positive";
    fail(ErrorCode::NotInvertible, os.str());
  }
  return TimeTerm{a.coef, (a.mu + Exponent::rational(1, 1)).value(), a.alpha, beta, a.kappa.value(), a.omega};
}

EvalResult series_eval_time(const std::vector<TimeTerm>& terms, double t, double tol) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "series_eval_time: t must be positive");
  CompensatedComplexSum sum;
  double ml_error = 0.0, max_term = 0.0, last = 0.0, prev = 0.0;
  for (const auto& term : terms) {
    const double scale = std::pow(t, term.power);
    const EvalResult ml = ml3(term.alpha, term.beta, term.gamma, term.omega * std::pow(t, term.alpha),
                                relative_series_tol(term.beta, tol));
    const cplx v = term.coef * scale * ml.value;
    sum.add(v);
    ml_error += std::abs(term.coef) * scale * ml.est_error;
    max_term = std::max(max_term, std::abs(v));
    prev = last;
    last = std::abs(v);
  }
  double tail = 0.0;
  if (terms.size() >= 2 && last > 0.0) {
    const double r = prev > 0.0 ? std::min(last / prev, 0.99) : 0.99;
    tail = last * r / (1.0 - r);
  }
  return EvalResult{sum.value(), ml_error + tail, static_cast<int>(terms.size()), max_term};
}

std::string render_trace(const AtomSeries& series) {
  std::ostringstream os;
  for (std::size_t n = 0; n < series.atoms.size(); ++n) {
    const SawiAtom& a = series.atoms[n];
    os << n << '\t' << shortest(a.coef.real()) << '\t' << shortest(a.coef.imag()) << '\t' << a.mu.str() << '\t'
       << a.kappa.str();
    const Exponent power = a.mu + Exponent::rational(1, 1);
    const Exponent beta = a.mu + Exponent::rational(2, 1);
    if (beta.value() > 0.0) {
      os << '\t' << power.str() << '\t' << beta.str() << '\t' << a.kappa.str();
    } else {
      os << "\t-\t-\t-";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace sawi

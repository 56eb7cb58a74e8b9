#include "sawi/ml_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sawi/error.hpp"
#include "sawi/summation.hpp"

namespace sawi {

namespace {

constexpr double kDirectGammaLimit = 170.0;
constexpr double kRescaleThreshold = 1e250;

bool is_gamma_pole(double x) {
  if (x > 0.0) return false;
  const double r = std::nearbyint(x);
  return std::abs(x - r) <= 1e-13 * std::max(1.0, std::abs(x));
}

// log|Gamma(x)| and its sign, without touching the global signgam.
double log_abs_gamma(double x, int& sign) {
  sign = 1;
#if defined(__GLIBC__)
  return ::lgamma_r(x, &sign);
#else
  const double v = std::lgamma(x);
  sign = (x > 0.0 || static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
  return v;
#endif
}

template <class OnPartial>
EvalResult ml3_series(double alpha, double rho, double gamma, cplx z, double tol,
                      OnPartial&& on_partial) {
  if (!std::isfinite(alpha) || !std::isfinite(rho) || !std::isfinite(gamma) ||
      !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorCode::InvalidArgument, "ml3: non-finite parameter or argument");
  }
  if (alpha <= 0.0) {
    std::ostringstream os;
    os << "ml3: alpha must be positive, got " << alpha;
    fail(ErrorCode::InvalidOrder, os.str());
  }
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "ml3: tol must be positive");
  if (std::abs(z) > kMaxSeriesArgument) {
    std::ostringstream os;
    os << "ml3: |z| = " << std::abs(z) << " exceeds the supported range "
       << kMaxSeriesArgument;
    fail(ErrorCode::OutOfSupportedRange, os.str());
  }

  CompensatedComplexSum sum;
  // w = (gamma)_k z^k / k!, stored as w * exp(log_scale) to survive overflow.
  cplx w{1.0, 0.0};
  double log_scale = 0.0;
  std::array<double, 3> recent{0.0, 0.0, 0.0};
  double prev_mag = 0.0;
  double max_term = 0.0;
  int first_regular = -1;  // first k whose Gamma argument is positive

  for (int k = 0; k < kSeriesTermCap; ++k) {
    const double x = alpha * k + rho;
    cplx term{0.0, 0.0};
    if (w != cplx{0.0, 0.0} && !is_gamma_pole(x)) {
      if (log_scale == 0.0 && x <= kDirectGammaLimit) {
        term = w * rgamma(x);
      } else {
        int sign = 1;
        const double lg = log_abs_gamma(x, sign);
        term = w * (static_cast<double>(sign) * std::exp(log_scale - lg));
      }
    }
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      std::ostringstream os;
      os << "ml3: series term " << k << " overflowed (alpha=" << alpha << ", rho=" << rho
         << ", gamma=" << gamma << ", z=" << z << ")";
      fail(ErrorCode::NonConvergence, os.str());
    }
    sum.add(term);
    on_partial(sum.value());

    const double mag = std::abs(term);
    max_term = std::max(max_term, mag);
    recent[static_cast<std::size_t>(k % 3)] = mag;
    if (first_regular < 0 && x > 0.0) first_regular = k;

    double ratio;
    if (prev_mag > 0.0) {
      ratio = mag / prev_mag;
    } else {
      ratio = mag == 0.0 ? 0.0 : 1.0;
    }
    prev_mag = mag;

    if (first_regular >= 0 && k >= first_regular + 2 && ratio < 1.0) {
      const double r = std::min(ratio, 0.99);
      const double est = (recent[0] + recent[1] + recent[2]) / (1.0 - r);
      const cplx s = sum.value();
      if (est <= tol * std::max(1.0, std::abs(s))) {
        return EvalResult{s, est, k + 1, max_term};
      }
    }

    // Advance w to k + 1.
    w *= z * ((gamma + k) / (k + 1.0));
    const double aw = std::abs(w);
    if (aw > kRescaleThreshold) {
      w /= aw;
      log_scale += std::log(aw);
    }
  }
  std::ostringstream os;
  os << "ml3: series did not converge within " << kSeriesTermCap
     << " terms (alpha=" << alpha << ", rho=" << rho << ", gamma=" << gamma
     << ", z=" << z << ")";
  fail(ErrorCode::NonConvergence, os.str());
}

}  // namespace

void KernelSpec::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(rho) || !std::isfinite(gamma) ||
      !std::isfinite(omega.real()) || !std::isfinite(omega.imag())) {
    fail(ErrorCode::InvalidArgument, "KernelSpec: all fields must be finite");
  }
  if (alpha <= 0.0) fail(ErrorCode::InvalidOrder, "KernelSpec: alpha must be positive");
}

double pochhammer(double gamma, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "pochhammer: k must be nonnegative");
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= gamma + i;
  return p;
}

double rgamma(double x) {
  if (is_gamma_pole(x)) return 0.0;
  if (x > kDirectGammaLimit) {
    return std::exp(-std::lgamma(x));
  }
  if (x < -kDirectGammaLimit) {
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    int sign = 1;
    const double lg = log_abs_gamma(1.0 - x, sign);
    return sign * std::exp(lg) * std::sin(std::numbers::pi * x) / std::numbers::pi;
  }
  return 1.0 / std::tgamma(x);
}

EvalResult ml3(double alpha, double rho, double gamma, cplx z, double tol) {
  return ml3_series(alpha, rho, gamma, z, tol, [](cplx) {});
}

double relative_series_tol(double rho, double tol) {
  return std::max(tol * std::min(1.0, std::abs(rgamma(rho))), std::numeric_limits<double>::min());
}

EvalResult ml2(double alpha, double rho, cplx z, double tol) {
  return ml3(alpha, rho, 1.0, z, tol);
}

EvalResult ml1(double alpha, cplx z, double tol) { return ml3(alpha, 1.0, 1.0, z, tol); }

std::vector<cplx> ml3_partial_sums(double alpha, double rho, double gamma, cplx z,
                                   double tol) {
  std::vector<cplx> out;
  ml3_series(alpha, rho, gamma, z, tol, [&](cplx s) { out.push_back(s); });
  return out;
}

cplx prabhakar_kernel(const KernelSpec& spec, double t, double tol) {
  spec.validate();
  if (spec.rho <= 0.0) {
    fail(ErrorCode::InvalidOrder,
         "prabhakar_kernel: rho must be positive for pointwise evaluation");
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    fail(ErrorCode::InvalidArgument, "prabhakar_kernel: t must be positive");
  }
  const cplx arg = spec.omega * std::pow(t, spec.alpha);
  return std::pow(t, spec.rho - 1.0) * ml3(spec.alpha, spec.rho, spec.gamma, arg, tol).value;
}

cplx kernel_antiderivative(const KernelSpec& spec, double t, double tol) {
  if (spec.rho <= 0.0) {
    fail(ErrorCode::InvalidOrder, "kernel_antiderivative: rho must be positive");
  }
  return kernel_primitive(spec, t, 1, tol);
}

cplx kernel_primitive(const KernelSpec& spec, double t, int order, double tol) {
  spec.validate();
  if (order < 1) fail(ErrorCode::InvalidArgument, "kernel_primitive: order must be >= 1");
  if (spec.rho < 0.0) fail(ErrorCode::InvalidOrder, "kernel_primitive: rho must be >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    fail(ErrorCode::InvalidArgument, "kernel_primitive: t must be nonnegative");
  }
  if (t == 0.0) return {0.0, 0.0};
  const double shifted = spec.rho + order;
  const cplx arg = spec.omega * std::pow(t, spec.alpha);
  return std::pow(t, shifted - 1.0) * ml3(spec.alpha, shifted, spec.gamma, arg, tol).value;
}

}  // namespace sawi

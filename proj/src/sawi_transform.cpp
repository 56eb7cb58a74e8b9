#include "sawi/sawi_transform.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "sawi/error.hpp"
#include "sawi/summation.hpp"

namespace sawi {

namespace {

constexpr int kNewtonMaxIter = 100;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_positive_s(double s, const char* who) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << who << ": s must be positive and finite, got " << s;
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

// 1 - omega s^alpha, the base of every image factor.
cplx image_base(const KernelSpec& spec, double s) {
  return 1.0 - spec.omega * std::pow(s, spec.alpha);
}

void require_region(const KernelSpec& spec, double s, const char* who) {
  const double r = std::abs(spec.omega) * std::pow(s, spec.alpha);
  if (!(r < 1.0)) {
    std::ostringstream os;
    os << who << ": |omega s^alpha| = " << r << " is outside the region |omega s^alpha| < 1";
    fail(ErrorCode::OutOfRegion, os.str());
  }
}

// base^e on the principal branch; real arithmetic for a positive real base.
cplx base_pow(cplx base, double e) {
  if (base.imag() == 0.0 && base.real() > 0.0) return {std::pow(base.real(), e), 0.0};
  return std::pow(base, e);
}

// Newton iteration from the classical asymptotic initial guesses, carried out
// in long double because the weights of the smallest nodes are sensitive to
// node error at the level of a few ulps.
LaguerreRule build_laguerre(int n, double alpha) {
  using ld = long double;
  const ld a = alpha;
  LaguerreRule rule{n, alpha, std::vector<double>(static_cast<std::size_t>(n)),
                    std::vector<double>(static_cast<std::size_t>(n))};
  std::vector<ld> nodes(static_cast<std::size_t>(n));
  const ld norm = std::exp(std::lgamma(a + n) - std::lgamma(static_cast<ld>(n)));
  ld z = 0.0L;
  // p1 = L_n^{(a)}(x), p2 = L_{n-1}^{(a)}(x), pp = d/dx L_n^{(a)}(x).
  ld p1 = 0.0L, p2 = 0.0L, pp = 0.0L;
  const auto evaluate = [&](ld x) {
    p1 = 1.0L;
    p2 = 0.0L;
    for (int j = 1; j <= n; ++j) {
      const ld p3 = p2;
      p2 = p1;
      p1 = ((2.0L * j - 1.0L + a - x) * p2 - (j - 1.0L + a) * p3) / j;
    }
    pp = (n * p1 - (n + a) * p2) / x;
  };
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = (1.0L + a) * (3.0L + 0.92L * a) / (1.0L + 2.4L * n + 1.8L * a);
    } else if (i == 1) {
      z += (15.0L + 6.25L * a) / (1.0L + 0.9L * a + 2.5L * n);
    } else {
      const ld ai = i - 1;
      z += ((1.0L + 2.55L * ai) / (1.9L * ai) + 1.26L * ai * a / (1.0L + 3.5L * ai)) *
           (z - nodes[static_cast<std::size_t>(i - 2)]) / (1.0L + 0.3L * a);
    }
    int polish = -1;  // remaining steps once the tolerance is first met
    for (int it = 0; it < kNewtonMaxIter && polish != 0; ++it) {
      evaluate(z);
      const ld z1 = z;
      z = z1 - p1 / pp;
      if (polish > 0) {
        --polish;
      } else if (polish < 0 && std::abs(z - z1) <= 1e-15L * std::abs(z)) {
        polish = 2;
      }
    }
    if (polish != 0 || !std::isfinite(z) || !(z > 0.0L)) {
      std::ostringstream os;
      os << "gauss_laguerre: Newton refinement failed for node " << i << " of " << n;
      fail(ErrorCode::QuadratureFailure, os.str());
    }
    evaluate(z);
    nodes[static_cast<std::size_t>(i)] = z;
    rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(z);
    rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(-norm / (pp * n * p2));
  }
  return rule;
}

// Exact panel integrals of the hat functions against e^{-h theta} on [0, 1]:
// I0 = int e^{-h theta}, I1 = int theta e^{-h theta}.
std::pair<double, double> exp_panel_moments(double h) {
  if (h < 0.1) {
    double i0 = 0.0, i1 = 0.0, term = 1.0;
    for (int k = 0; k < 30; ++k) {
      i0 += term / (k + 1.0);
      i1 += term / (k + 2.0);
      term *= -h / (k + 1.0);
    }
    return {i0, i1};
  }
  const double e = std::exp(-h);
  return {-std::expm1(-h) / h, (1.0 - e * (1.0 + h)) / (h * h)};
}

}  // namespace

void HilferSpec::validate() const {
  kernel.validate();
  if (!(nu >= 0.0 && nu <= 1.0)) {
    fail(ErrorCode::InvalidOrder, "HilferSpec: nu must lie in [0, 1]");
  }
  if (!(kernel.rho > 0.0 && kernel.rho <= 1.0)) {
    fail(ErrorCode::InvalidOrder, "HilferSpec: rho must lie in (0, 1]");
  }
}

const LaguerreRule& gauss_laguerre(int n, double power) {
  if (n < 1 || n > 512) fail(ErrorCode::QuadratureFailure, "gauss_laguerre: node count must lie in [1, 512]");
  if (!(power > -1.0) || !std::isfinite(power)) {
    fail(ErrorCode::QuadratureFailure, "gauss_laguerre: power must exceed -1");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<const LaguerreRule>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, power}];
  if (!slot) slot = std::make_unique<const LaguerreRule>(build_laguerre(n, power));
  return *slot;
}

cplx sawi_forward_numeric(const TimeFunction& f, double s, const LaguerreSpec& quad) {
  require_positive_s(s, "sawi_forward_numeric");
  const LaguerreRule& rule = gauss_laguerre(quad.nodes, quad.endpoint_power);
  CompensatedComplexSum acc;
  for (int i = 0; i < rule.n; ++i) {
    const double x = rule.nodes[static_cast<std::size_t>(i)];
    const double w = rule.weights[static_cast<std::size_t>(i)];
    if (w == 0.0) continue;
    const double unweight = quad.endpoint_power == 0.0 ? 1.0 : std::pow(x, -quad.endpoint_power);
    acc.add(w * unweight * f(s * x));
  }
  return acc.value() / s;
}

cplx sawi_forward_samples(const Samples& f, double s) {
  f.validate();
  require_positive_s(s, "sawi_forward_samples");
  const double dt = f.grid.dt;
  const double h = dt / s;
  const auto [i0, i1] = exp_panel_moments(h);
  CompensatedComplexSum acc;
  for (std::size_t j = 0; j + 1 < f.grid.n; ++j) {
    const double decay = std::exp(-static_cast<double>(j) * h);
    if (decay == 0.0) break;
    acc.add(decay * (f.values[j] * (i0 - i1) + f.values[j + 1] * i1));
  }
  cplx total = acc.value() * dt / (s * s);
  if (f.lead) {
    const double a = f.lead->exponent;
    total += f.lead->coef * std::tgamma(1.0 - a) * std::pow(s, -1.0 - a);
  }
  return total;
}

cplx sawi_ml_image(const KernelSpec& spec, double s) {
  spec.validate();
  require_positive_s(s, "sawi_ml_image");
  require_region(spec, s, "sawi_ml_image");
  return std::pow(s, spec.rho - 2.0) * base_pow(image_base(spec, s), -spec.gamma);
}

cplx sawi_ml_image(const KernelSpec& spec, cplx s) {
  spec.validate();
  const cplx base = 1.0 - spec.omega * std::pow(s, spec.alpha);
  return std::pow(s, spec.rho - 2.0) * std::pow(base, -spec.gamma);
}

cplx prabhakar_integral_image(const KernelSpec& spec, cplx T_at_s, double s) {
  spec.validate();
  require_positive_s(s, "prabhakar_integral_image");
  require_region(spec, s, "prabhakar_integral_image");
  return std::pow(s, spec.rho) * base_pow(image_base(spec, s), -spec.gamma) * T_at_s;
}

cplx sawi_mth_derivative_image(cplx T_at_s, const InitialData& init, int m, double s) {
  require_positive_s(s, "sawi_mth_derivative_image");
  if (m < 1) fail(ErrorCode::InvalidArgument, "sawi_mth_derivative_image: m must be >= 1");
  if (init.derivative_values.size() != static_cast<std::size_t>(m)) {
    std::ostringstream os;
    os << "sawi_mth_derivative_image: expected " << m << " initial values, got "
       << init.derivative_values.size();
    fail(ErrorCode::ArityMismatch, os.str());
  }
  cplx out = std::pow(s, -m) * T_at_s;
  for (int k = 0; k < m; ++k) {
    out -= std::pow(s, k - m - 1) * init.derivative_values[static_cast<std::size_t>(k)];
  }
  return out;
}

cplx operator_image(OperatorKind kind, cplx T_at_s, const HilferSpec& hspec,
                    const InitialData& init, int m, double s) {
  const KernelSpec& k = hspec.kernel;
  require_positive_s(s, "operator_image");
  if (kind == OperatorKind::Prabhakar || kind == OperatorKind::RegPrabhakar) {
    k.validate();
    if (!(k.rho > 0.0)) fail(ErrorCode::InvalidOrder, "operator_image: rho must be positive");
    if (m < 1 || !(k.rho <= m && k.rho > m - 1)) {
      fail(ErrorCode::InvalidArgument, "operator_image: m must equal ceil(rho)");
    }
    if (init.derivative_values.size() != static_cast<std::size_t>(m)) {
      std::ostringstream os;
      os << "operator_image: expected " << m << " initial values, got "
         << init.derivative_values.size();
      fail(ErrorCode::ArityMismatch, os.str());
    }
  } else {
    hspec.validate();
  }
  require_region(k, s, "operator_image");

  const cplx base = image_base(k, s);
  const cplx lead = std::pow(s, -k.rho) * base_pow(base, k.gamma) * T_at_s;
  switch (kind) {
    case OperatorKind::Prabhakar: {
      cplx out = lead;
      for (int j = 0; j < m; ++j) {
        out -= std::pow(s, j - m - 1) * init.derivative_values[static_cast<std::size_t>(j)];
      }
      return out;
    }
    case OperatorKind::RegPrabhakar: {
      const cplx factor = base_pow(base, k.gamma);
      cplx out = lead;
      for (int j = 0; j < m; ++j) {
        out -= std::pow(s, j - k.rho - 1.0) * factor *
               init.derivative_values[static_cast<std::size_t>(j)];
      }
      return out;
    }
    case OperatorKind::HilferPrabhakar: {
      if (!init.weighted_value) {
        fail(ErrorCode::ArityMismatch, "operator_image: Hilfer-Prabhakar image needs weighted_value");
      }
      return lead - std::pow(s, hspec.nu * (1.0 - k.rho) - 2.0) *
                        base_pow(base, k.gamma * hspec.nu) * *init.weighted_value;
    }
    case OperatorKind::RegHilferPrabhakar: {
      if (init.derivative_values.size() != 1) {
        std::ostringstream os;
        os << "operator_image: regularized Hilfer-Prabhakar image needs exactly one initial value, got "
           << init.derivative_values.size();
        fail(ErrorCode::ArityMismatch, os.str());
      }
      return lead - std::pow(s, -k.rho - 1.0) * base_pow(base, k.gamma) * init.derivative_values[0];
    }
  }
  fail(ErrorCode::Internal, "operator_image: unknown operator kind");
}

cplx inverse_sawi_numeric(const ImageFunction& image, double t, const TalbotSpec& contour) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    fail(ErrorCode::InvalidArgument, "inverse_sawi_numeric: t must be positive");
  }
  const int M = contour.nodes;
  if (M < 2) fail(ErrorCode::InvalidArgument, "inverse_sawi_numeric: at least two contour nodes are required");
  const double r = 2.0 * M / (5.0 * t);
  const auto laplace = [&](cplx p) { return image(1.0 / p) / (p * p); };

  CompensatedComplexSum acc;
  for (int k = -(M - 1); k <= M - 1; ++k) {
    cplx p, weight;
    if (k == 0) {
      p = {r, 0.0};
      weight = {1.0, 0.0};
    } else {
      const double theta = k * std::numbers::pi / M;
      const double cot = std::cos(theta) / std::sin(theta);
      p = r * theta * cplx{cot, 1.0};
      const double sigma = theta + (theta * cot - 1.0) * cot;
      weight = {1.0, sigma};
    }
    const cplx term = std::exp(t * p) * laplace(p) * weight;
    if (!finite(term)) {
      std::ostringstream os;
      os << "inverse_sawi_numeric: non-finite image value at contour node p = " << p;
      fail(ErrorCode::ContourFailure, os.str());
    }
    acc.add(term);
  }
  return acc.value() * (r / (2.0 * M));
}

cplx convolve_numeric(const TimeFunction& f, const TimeFunction& g, double t, double rel_tol) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    fail(ErrorCode::InvalidArgument, "convolve_numeric: t must be nonnegative");
  }
  if (t == 0.0) return {0.0, 0.0};
  using boost::math::quadrature::gauss_kronrod;
  const auto integrand = [&](double tau) { return f(tau) * g(t - tau); };
  double err = 0.0;
  const double re = gauss_kronrod<double, 61>::integrate(
      [&](double tau) { return integrand(tau).real(); }, 0.0, t, 15, rel_tol, &err);
  const double im = gauss_kronrod<double, 61>::integrate(
      [&](double tau) { return integrand(tau).imag(); }, 0.0, t, 15, rel_tol, &err);
  const cplx out{re, im};
  if (!finite(out)) fail(ErrorCode::QuadratureFailure, "convolve_numeric: non-finite result");
  return out;
}

}  // namespace sawi

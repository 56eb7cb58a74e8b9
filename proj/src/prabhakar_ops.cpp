#include "sawi/prabhakar_ops.hpp"

#include <cmath>
#include <sstream>

#include "sawi/error.hpp"
#include "sawi/summation.hpp"

namespace sawi {

namespace {

constexpr double kLeadMatchTol = 1e-12;

// Fornberg weights of the k-th derivative at x0 over the given abscissae.
std::vector<double> fornberg(const std::vector<double>& x, double x0, int k) {
  const std::size_t p = x.size();
  std::vector<std::vector<double>> c(p, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < p; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), k);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m) c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int m = mn; m >= 1; --m) c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(p);
  for (std::size_t i = 0; i < p; ++i) w[i] = c[i][static_cast<std::size_t>(k)];
  return w;
}

void require_no_lead(const Samples& f, const char* who) {
  if (f.lead) fail(ErrorCode::InvalidArgument, std::string(who) + ": input must not carry a singular lead");
}

// Tabulated first and second kernel primitives at m dt, m = 0 .. n-1.
struct Moments {
  std::vector<cplx> k1;
  std::vector<cplx> k2;
};

Moments tabulate(const KernelSpec& spec, const Grid& grid, bool second) {
  Moments mo{std::vector<cplx>(grid.n), second ? std::vector<cplx>(grid.n) : std::vector<cplx>{}};
  for (std::size_t m = 0; m < grid.n; ++m) {
    mo.k1[m] = kernel_primitive(spec, grid.t(m), 1);
    if (second) mo.k2[m] = kernel_primitive(spec, grid.t(m), 2);
  }
  return mo;
}

// Exact integral of the lead c tau^{-a} against the kernel: c Gamma(1-a) t^{rho-a} E^{gamma}_{alpha,rho+1-a}.
cplx lead_integral(const SingularLead& lead, const KernelSpec& spec, double t) {
  const double shift = spec.rho - lead.exponent;
  const cplx scale = lead.coef * std::tgamma(1.0 - lead.exponent);
  if (t == 0.0) return std::abs(shift) <= kLeadMatchTol ? scale * rgamma(1.0 + shift) : cplx{0.0, 0.0};
  const double power = std::abs(shift) <= kLeadMatchTol ? 0.0 : shift;
  const cplx arg = spec.omega * std::pow(t, spec.alpha);
  return scale * std::pow(t, power) * ml3(spec.alpha, spec.rho + 1.0 - lead.exponent, spec.gamma, arg).value;
}

// Positive-order integral of the piecewise-linear interpolant plus any lead.
Samples integrate_linear(const Samples& f, const KernelSpec& spec) {
  const Grid& g = f.grid;
  if (f.lead && spec.rho < f.lead->exponent - kLeadMatchTol) {
    std::ostringstream os;
    os << "prabhakar_integral_num: kernel order " << spec.rho << " below the lead exponent " << f.lead->exponent;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  const Moments mo = tabulate(spec, g, true);
  const double inv_dt = 1.0 / g.dt;
  // Coefficient of f_{j-l}: c[0] = right(0), c[l] = right(l) + left(l-1); left(j-1) multiplies f_0.
  std::vector<cplx> right(g.n - 1), left(g.n - 1);
  for (std::size_t m = 0; m + 1 < g.n; ++m) {
    const cplx d = (mo.k2[m + 1] - mo.k2[m]) * inv_dt;
    right[m] = d - mo.k1[m];
    left[m] = mo.k1[m + 1] - d;
  }
  std::vector<cplx> c(g.n - 1);
  c[0] = right[0];
  for (std::size_t l = 1; l + 1 < g.n; ++l) c[l] = right[l] + left[l - 1];

  Samples out{g, std::vector<cplx>(g.n), std::nullopt};
  for (std::size_t j = 1; j < g.n; ++j) {
    CompensatedComplexSum acc;
    for (std::size_t l = 0; l < j; ++l) acc.add(c[l] * f.values[j - l]);
    acc.add(left[j - 1] * f.values[0]);
    out.values[j] = acc.value();
  }
  if (f.lead) {
    for (std::size_t j = 0; j < g.n; ++j) out.values[j] += lead_integral(*f.lead, spec, g.t(j));
  }
  return out;
}

// Integral of g' with a positive-order kernel, as d/dt of the integral of g - g(0):
// the two agree for g continuous at 0 and the latter keeps second-order accuracy.
Samples derivative_of_shifted_integral(const Samples& g, const KernelSpec& spec) {
  Samples shifted{g.grid, g.values, std::nullopt};
  const cplx g0 = g.values.front();
  for (cplx& v : shifted.values) v -= g0;
  const Samples h = integrate_linear(shifted, spec);
  return Samples{g.grid, derivative_stencil(h.values, g.grid.dt, 1), std::nullopt};
}

void require_order(const KernelSpec& spec, int k, const char* who) {
  spec.validate();
  if (!(spec.rho > 0.0)) fail(ErrorCode::InvalidOrder, std::string(who) + ": rho must be positive");
  if (k != static_cast<int>(std::ceil(spec.rho))) {
    std::ostringstream os;
    os << who << ": k = " << k << " must equal ceil(rho) = " << std::ceil(spec.rho);
    fail(ErrorCode::InvalidOrder, os.str());
  }
}

void require_nodes(const Grid& g, int k, const char* who) {
  if (g.n < static_cast<std::size_t>(k) + 2) {
    std::ostringstream os;
    os << who << ": " << g.n << " nodes cannot resolve a derivative of order " << k;
    fail(ErrorCode::GridTooCoarse, os.str());
  }
}

KernelSpec complement(const KernelSpec& spec, double order, double gamma) {
  return KernelSpec{spec.alpha, order, gamma, spec.omega};
}

}  // namespace

std::vector<cplx> derivative_stencil(const std::vector<cplx>& values, double dt, int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "derivative_stencil: order must be >= 1");
  const std::size_t n = values.size();
  if (n < static_cast<std::size_t>(k) + 2) {
    fail(ErrorCode::GridTooCoarse, "derivative_stencil: too few nodes for the derivative order");
  }
  const auto half = static_cast<std::size_t>((k + 1) / 2);
  const std::size_t wide = static_cast<std::size_t>(k) + 2;
  std::vector<cplx> out(n);
  // Weights depend only on the node's offset within its stencil window.
  std::vector<double> centered_w;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t lo = 0, width = 0;
    if (j >= half && j + half < n) {
      lo = j - half;
      width = 2 * half + 1;
      if (centered_w.empty()) {
        std::vector<double> x(width);
        for (std::size_t i = 0; i < width; ++i) x[i] = static_cast<double>(i);
        centered_w = fornberg(x, static_cast<double>(half), k);
      }
      CompensatedComplexSum acc;
      for (std::size_t i = 0; i < width; ++i) acc.add(centered_w[i] * values[lo + i]);
      out[j] = acc.value() / std::pow(dt, k);
      continue;
    }
    lo = j < half ? 0 : n - wide;
    width = wide;
    std::vector<double> x(width);
    for (std::size_t i = 0; i < width; ++i) x[i] = static_cast<double>(i);
    const std::vector<double> w = fornberg(x, static_cast<double>(j - lo), k);
    CompensatedComplexSum acc;
    for (std::size_t i = 0; i < width; ++i) acc.add(w[i] * values[lo + i]);
    out[j] = acc.value() / std::pow(dt, k);
  }
  return out;
}

Samples prabhakar_integral_num(const Samples& f, const KernelSpec& spec) {
  spec.validate();
  f.validate();
  if (!(spec.rho > 0.0)) fail(ErrorCode::InvalidOrder, "prabhakar_integral_num: rho must be positive");
  return integrate_linear(f, spec);
}

Samples prabhakar_derivative_num(const Samples& f, const KernelSpec& spec, int k) {
  require_order(spec, k, "prabhakar_derivative_num");
  f.validate();
  require_nodes(f.grid, k, "prabhakar_derivative_num");
  const double order = k - spec.rho;
  Samples g = f;
  if (order > 0.0) {
    g = integrate_linear(f, complement(spec, order, -spec.gamma));
  } else {
    require_no_lead(f, "prabhakar_derivative_num");
  }
  return Samples{f.grid, derivative_stencil(g.values, f.grid.dt, k), std::nullopt};
}

Samples reg_prabhakar_derivative_num(const Samples& f, const KernelSpec& spec, int k) {
  require_order(spec, k, "reg_prabhakar_derivative_num");
  f.validate();
  require_no_lead(f, "reg_prabhakar_derivative_num");
  require_nodes(f.grid, k, "reg_prabhakar_derivative_num");
  Samples d{f.grid, derivative_stencil(f.values, f.grid.dt, k), std::nullopt};
  const double order = k - spec.rho;
  if (order == 0.0) return d;
  return integrate_linear(d, complement(spec, order, -spec.gamma));
}

Samples hilfer_prabhakar_num(const Samples& f, const HilferSpec& hspec) {
  hspec.validate();
  f.validate();
  require_nodes(f.grid, 1, "hilfer_prabhakar_num");
  const KernelSpec& spec = hspec.kernel;
  const double inner_order = (1.0 - hspec.nu) * (1.0 - spec.rho);
  const double outer_order = hspec.nu * (1.0 - spec.rho);
  Samples g = f;
  if (inner_order > 0.0) {
    g = integrate_linear(f, complement(spec, inner_order, -spec.gamma * (1.0 - hspec.nu)));
  } else {
    require_no_lead(f, "hilfer_prabhakar_num");
  }
  if (outer_order == 0.0) return Samples{f.grid, derivative_stencil(g.values, f.grid.dt, 1), std::nullopt};
  return derivative_of_shifted_integral(g, complement(spec, outer_order, -spec.gamma * hspec.nu));
}

Samples reg_hilfer_prabhakar_num(const Samples& f, const HilferSpec& hspec) {
  hspec.validate();
  f.validate();
  require_no_lead(f, "reg_hilfer_prabhakar_num");
  require_nodes(f.grid, 1, "reg_hilfer_prabhakar_num");
  const KernelSpec& spec = hspec.kernel;
  const double order = 1.0 - spec.rho;
  if (order == 0.0) return Samples{f.grid, derivative_stencil(f.values, f.grid.dt, 1), std::nullopt};
  return derivative_of_shifted_integral(f, complement(spec, order, -spec.gamma));
}

}  // namespace sawi

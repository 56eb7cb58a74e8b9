#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "sawi/ml_kernels.hpp"
#include "sawi/samples.hpp"

namespace sawi {

using TimeFunction = std::function<cplx(double)>;
/// s-domain image; called with complex s by the contour inversion.
using ImageFunction = std::function<cplx(cplx)>;

/// Generalized Gauss-Laguerre rule for the weight t^power e^{-t} on [0, inf).
struct LaguerreRule {
  int n = 0;
  double power = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule; tables are built once per (n, power) and never mutated.
/// Throws QuadratureFailure if Newton refinement of a node fails.
const LaguerreRule& gauss_laguerre(int n, double power = 0.0);

/// Quadrature options for the forward transform.
///
/// endpoint_power declares a known t^power behaviour of psi at the origin;
/// the rule then integrates that factor exactly (power > -1).
struct LaguerreSpec {
  int nodes = 64;
  double endpoint_power = 0.0;
};

/// Fixed-Talbot contour options.
struct TalbotSpec {
  int nodes = 32;
};

/// Data entering the derivative rules at t = 0+.
struct InitialData {
  /// psi^{(k)}(0+) for k = 0 .. m-1 (or the Prabhakar-derivative values for
  /// the non-regularized Prabhakar rule).
  std::vector<cplx> derivative_values;
  /// Prabhakar-weighted initial value used by the Hilfer-Prabhakar rule.
  std::optional<cplx> weighted_value;
};

/// Kernel plus the Hilfer interpolation weight nu in [0, 1].
struct HilferSpec {
  KernelSpec kernel;
  double nu = 0.0;

  /// Requires 0 <= nu <= 1 and 0 < rho <= 1 (rho = 1 is only meaningful for the
  /// regularized operator).
  void validate() const;
};

enum class OperatorKind { Prabhakar, RegPrabhakar, HilferPrabhakar, RegHilferPrabhakar };

/// (1/s) * int_0^inf e^{-t} psi(s t) dt by Gauss-Laguerre quadrature.
cplx sawi_forward_numeric(const TimeFunction& f, double s, const LaguerreSpec& quad = {});

/// (1/s^2) * int_0^{t_end} psi(t) e^{-t/s} dt for sampled psi.
///
/// The piecewise-linear interpolant is integrated against the exponential
/// exactly; a singular lead is transformed in closed form. The tail beyond the
/// grid is dropped, so the grid must extend well past s.
cplx sawi_forward_samples(const Samples& f, double s);

/// Closed-form image s^{rho-2} (1 - omega s^alpha)^{-gamma} of the Prabhakar kernel.
/// Throws OutOfRegion unless |omega s^alpha| < 1.
cplx sawi_ml_image(const KernelSpec& spec, double s);

/// Same expression continued to complex s with principal branches; no region check.
cplx sawi_ml_image(const KernelSpec& spec, cplx s);

/// Image of the Prabhakar integral, s^rho (1 - omega s^alpha)^{-gamma} T(s).
cplx prabhakar_integral_image(const KernelSpec& spec, cplx T_at_s, double s);

/// Image of the m-th derivative: s^{-m} T - sum_k s^{k-m-1} psi^{(k)}(0).
/// Throws ArityMismatch unless init.derivative_values has length m.
cplx sawi_mth_derivative_image(cplx T_at_s, const InitialData& init, int m, double s);

/// Images of the four Prabhakar-type derivatives.
///
/// Prabhakar and RegPrabhakar use the derivative order hspec.kernel.rho with
/// m = ceil(rho) initial values; HilferPrabhakar needs init.weighted_value and
/// RegHilferPrabhakar a single psi(0+) in derivative_values.
cplx operator_image(OperatorKind kind, cplx T_at_s, const HilferSpec& hspec,
                    const InitialData& init, int m, double s);

/// Inverse transform by the fixed-Talbot rule applied to the Laplace image
/// L(p) = image(1/p) / p^2.
/// Throws ContourFailure if any node evaluation is non-finite.
cplx inverse_sawi_numeric(const ImageFunction& image, double t, const TalbotSpec& contour = {});

/// Causal convolution int_0^t f(tau) g(t - tau) dtau by adaptive Gauss-Kronrod.
cplx convolve_numeric(const TimeFunction& f, const TimeFunction& g, double t,
                      double rel_tol = 1e-12);

}  // namespace sawi

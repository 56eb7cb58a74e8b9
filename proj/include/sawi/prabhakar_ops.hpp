#pragma once

#include <vector>

#include "sawi/ml_kernels.hpp"
#include "sawi/samples.hpp"
#include "sawi/sawi_transform.hpp"

namespace sawi {

/// Product-integration approximation of the Prabhakar integral
/// int_0^{t_j} (t_j - tau)^{rho-1} E^{gamma}_{alpha,rho}(omega (t_j - tau)^alpha) f(tau) dtau
/// at every node, for piecewise-linear f and exact kernel moments.
///
/// A singular lead c t^{-a} in f is integrated exactly and requires rho >= a;
/// the result never carries a lead. Throws InvalidOrder when rho <= 0.
Samples prabhakar_integral_num(const Samples& f, const KernelSpec& spec);

/// k-th derivative of the integral with kernel (alpha, k - rho, -gamma, omega),
/// k = ceil(rho). Throws InvalidOrder when k != ceil(rho) and GridTooCoarse when n < k + 2.
Samples prabhakar_derivative_num(const Samples& f, const KernelSpec& spec, int k);

/// Integral with kernel (alpha, k - rho, -gamma, omega) of the numerical k-th
/// derivative of f. f must not carry a singular lead.
Samples reg_prabhakar_derivative_num(const Samples& f, const KernelSpec& spec, int k);

/// Outer integral (alpha, nu(1-rho), -gamma nu, omega) of the first derivative
/// of g, the inner integral (alpha, (1-nu)(1-rho), -gamma(1-nu), omega) of f.
/// The outer stage is evaluated as the node-wise derivative of the integral of
/// g - g(0). A zero-order stage is the identity. Parameter ranges follow HilferSpec::validate.
Samples hilfer_prabhakar_num(const Samples& f, const HilferSpec& hspec);

/// Integral (alpha, 1-rho, -gamma, omega) of the first derivative of f, evaluated
/// as the node-wise derivative of the integral of f - f(0). The result does not depend on nu.
Samples reg_hilfer_prabhakar_num(const Samples& f, const HilferSpec& hspec);

/// Node-wise k-th derivative: centered second-order stencils in the interior,
/// one-sided (k + 2)-point stencils near the ends. Throws GridTooCoarse when n < k + 2.
std::vector<cplx> derivative_stencil(const std::vector<cplx>& values, double dt, int k);

}  // namespace sawi

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sawi/analytic_solutions.hpp"
#include "sawi/samples.hpp"
#include "sawi/sawi_transform.hpp"

namespace sawi {

/// psi(t) = psi0 + c (e^{gamma}_{alpha,rho,omega} * psi)(t), the integrated form of
/// the regularized Hilfer-Prabhakar problem with right side c psi.
struct ScalarVolterraProblem {
  cplx c{0.0, 0.0};
  HilferSpec hspec;
  cplx psi0{1.0, 0.0};

  /// HilferSpec ranges (0 < rho <= 1).
  void validate() const;
};

/// Rectangle weights of the kernel: w_0 = K(dt), w_m = K((m+1) dt) - K(m dt),
/// K the first primitive of the kernel; m = 0 .. n-2.
std::vector<cplx> volterra_weights(const KernelSpec& kernel, const Grid& grid);

/// Implicit right-endpoint rectangle stepping
/// psi_j = [psi0 + c sum_{1 <= i < j} w_{j-i} psi_i] / (1 - c w_0); first order in dt.
/// Throws SingularStep when |1 - c w_0| vanishes.
Samples volterra_scalar_solve(const ScalarVolterraProblem& prob, const Grid& grid);

/// Per-mode oracle for the regularized Fourier problems: each mode k of the
/// quadrature is stepped with volterra_scalar_solve (psi0 = 1, c the symbol),
/// weighted by g*(k) and summed back to x. t must be a node of grid.
/// Modes run on worker threads unless serial; the result does not depend on it.
std::vector<cplx> spectral_pde_oracle(const AdvDispSpec& spec, const InitialProfile& g,
                                      const std::vector<double>& xs, double t, const Grid& grid,
                                      const ModeQuadrature& mq = {}, bool serial = false);
std::vector<cplx> spectral_pde_oracle(const HeatSpec& spec, const InitialProfile& g,
                                      const std::vector<double>& xs, double t, const Grid& grid,
                                      const ModeQuadrature& mq = {}, bool serial = false);

/// Scalar equation D psi = c psi + integral_coef I psi + forcing, where D is the
/// regularized or the plain Hilfer-Prabhakar derivative and I the Prabhakar
/// integral with integral_kernel.
struct ResidualProblem {
  HilferSpec hspec;
  bool regularized = true;
  cplx c{0.0, 0.0};
  cplx integral_coef{0.0, 0.0};
  std::optional<KernelSpec> integral_kernel;
  std::optional<Samples> forcing;
};

struct ResidualReport {
  double max_abs_residual = 0.0;
  std::size_t node_of_max = 0;
  /// Inclusive node range checked; the first 5% of nodes are excluded.
  std::pair<std::size_t, std::size_t> interior_range{0, 0};
};

/// Minimum candidate size accepted by residual_check.
constexpr std::size_t kResidualMinNodes = 512;

/// LHS by hilfer_prabhakar_num or reg_hilfer_prabhakar_num, RHS from the
/// problem, max |LHS - RHS| over the interior nodes.
/// Throws GridTooCoarse below kResidualMinNodes nodes and InvalidArgument when
/// the forcing grid differs from the candidate's.
ResidualReport residual_check(const ResidualProblem& prob, const Samples& candidate);

/// Mode k of the Fourier problems: c is the symbol at k.
ResidualProblem adv_disp_mode_problem(const AdvDispSpec& spec, double k);
ResidualProblem heat_mode_problem(const HeatSpec& spec, double k);
/// Regularized problem with kernel argument -omega and c = -lambda (1 - x).
ResidualProblem pointwise_problem(const PointwiseSpec& spec);
/// Plain Hilfer-Prabhakar problem with integral kernel (alpha, rho, delta, omega).
ResidualProblem integro_problem(const IntegroSpec& spec);

/// Oracle counterpart of a regularized problem: the same operator and c.
ScalarVolterraProblem oracle_problem(const PointwiseSpec& spec);

/// Residual of the oracle's own solution of the regularized problem with the
/// given kernel and c (psi0 = 1): the discretization bar analytic candidates are judged against.
ResidualReport calibration_residual(const HilferSpec& hspec, cplx c, const Grid& grid);

}  // namespace sawi

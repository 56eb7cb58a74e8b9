#pragma once

#include <optional>
#include <vector>

#include "sawi/ml_kernels.hpp"
#include "sawi/samples.hpp"
#include "sawi/sawi_algebra.hpp"
#include "sawi/sawi_transform.hpp"

namespace sawi {

constexpr int kDefaultSeriesTerms = 64;
/// Relative size of the estimated series error that raises the truncation warning.
constexpr double kTruncationWarnRatio = 1e-6;

/// Advection-dispersion problem: Hilfer-Prabhakar derivative in t equals
/// -p d/dx + theta (fractional Laplacian of order lap_order), Fourier symbol i p k - theta |k|^lap_order.
struct AdvDispSpec {
  HilferSpec hspec;
  double p = 0.0;
  double theta = 0.0;
  double lap_order = 2.0;
  /// true: regularized operator with psi(x, 0) = g; false: weighted initial value g.
  bool regularized = true;

  /// Requires 0 < lap_order <= 2 and theta >= 0.
  void validate() const;
};

/// Heat problem with second-derivative coefficient diffusivity > 0.
struct HeatSpec {
  HilferSpec hspec;
  double diffusivity = 1.0;
  bool regularized = true;

  void validate() const;
};

/// Pointwise relaxation problem: regularized derivative with kernel argument
/// -omega (hspec.kernel.omega holds omega) equals -lambda_coef (1 - x) psi, psi(x, 0) = 1.
struct PointwiseSpec {
  HilferSpec hspec;
  double lambda_coef = 1.0;
  double x = 0.0;

  /// Requires |x| <= 1 and lambda_coef > 0.
  void validate() const;
};

/// Integro-differential problem: Hilfer-Prabhakar derivative equals
/// lambda_coef times the Prabhakar integral (alpha, rho, delta, omega) of psi plus the
/// forcing; M_init is the weighted initial value.
struct IntegroSpec {
  HilferSpec hspec;
  cplx lambda_coef{0.0, 0.0};
  double delta = 0.0;
  cplx M_init{0.0, 0.0};
  Samples forcing;

  void validate() const;
};

/// Initial profile g(x) and its image g*(k) = int g(x) e^{ikx} dx.
struct InitialProfile {
  enum class Kind { Gaussian, PointMass };
  Kind kind = Kind::Gaussian;
  double sigma = 1.0;

  /// Unit-mass Gaussian exp(-x^2 / (2 sigma^2)) / (sigma sqrt(2 pi)).
  static InitialProfile gaussian(double sigma);
  static InitialProfile point_mass();

  cplx fourier_image(double k) const;
  /// g(x); throws InvalidArgument for a point mass.
  double value(double x) const;
  void validate() const;
};

/// Trapezoid rule over [-k_max, k_max] with nodes + 1 equally spaced points.
/// k_max = 0 selects 8 / sigma for Gaussian data.
struct ModeQuadrature {
  double k_max = 0.0;
  int nodes = 2048;

  /// Requires nodes even, nodes >= 64 and k_max >= 0.
  void validate() const;
  /// Effective k_max for the profile; throws InvalidArgument when a point mass has none.
  double resolved_k_max(const InitialProfile& g) const;
};

/// Time terms of sum_n z^n terms[n](t), built by term-wise inversion of a geometric expansion.
struct SeriesTemplate {
  AtomSeries atoms;
  std::vector<TimeTerm> terms;
  /// Leading t^{-a} behaviour of terms[0], 0 < a < 1.
  std::optional<double> lead_exponent;
};

/// tail_ratio is the estimated series error (geometric tail plus roundoff)
/// relative to the partial sum; for Fourier solutions both are weighted by
/// |g*(k)| and the error at each mode node is compared with the largest
/// weighted partial sum.
struct SolveResult {
  cplx value{0.0, 0.0};
  double tail_ratio = 0.0;
  bool truncation_warning = false;
};

struct ProfileResult {
  std::vector<cplx> values;
  double tail_ratio = 0.0;
  bool truncation_warning = false;
};

struct GridResult {
  Samples solution;
  double tail_ratio = 0.0;
  bool truncation_warning = false;
};

/// Series templates in the mode variable z: the Fourier symbol for the PDE
/// problems, -lambda (1 - x) for the pointwise problem and lambda for the
/// weighted part of the integro problem.
SeriesTemplate adv_disp_template(const AdvDispSpec& spec, int n_terms);
SeriesTemplate heat_template(const HeatSpec& spec, int n_terms);
SeriesTemplate pointwise_template(const PointwiseSpec& spec, int n_terms);
SeriesTemplate integro_template(const IntegroSpec& spec, int n_terms);

/// Prabhakar integral kernels (alpha, rho(2n+1), gamma + n(delta + gamma), omega) applied to the forcing.
std::vector<KernelSpec> integro_forcing_kernels(const IntegroSpec& spec, int n_terms);

cplx adv_disp_symbol(const AdvDispSpec& spec, double k);
cplx heat_symbol(const HeatSpec& spec, double k);

/// sum_n z^n terms[n](t) with its error estimate.
SolveResult mode_series(const SeriesTemplate& tpl, cplx z, double t);

/// The same series on every node of grid; a singular lead is split off
/// (coef / Gamma(1 - a)) t^{-a}, with the remainder's t = 0 limit taken as 0.
GridResult mode_series_samples(const SeriesTemplate& tpl, cplx z, const Grid& grid);

SolveResult solve_adv_disp(const AdvDispSpec& spec, const InitialProfile& g, double x, double t,
                           int n_terms = kDefaultSeriesTerms, const ModeQuadrature& mq = {});
ProfileResult solve_adv_disp_profile(const AdvDispSpec& spec, const InitialProfile& g,
                                     const std::vector<double>& xs, double t,
                                     int n_terms = kDefaultSeriesTerms, const ModeQuadrature& mq = {});

SolveResult solve_heat(const HeatSpec& spec, const InitialProfile& g, double x, double t,
                       int n_terms = kDefaultSeriesTerms, const ModeQuadrature& mq = {});
ProfileResult solve_heat_profile(const HeatSpec& spec, const InitialProfile& g, const std::vector<double>& xs,
                                 double t, int n_terms = kDefaultSeriesTerms, const ModeQuadrature& mq = {});

SolveResult solve_pointwise(const PointwiseSpec& spec, double t, int n_terms = kDefaultSeriesTerms);

/// Solution at node t_index of the forcing grid.
SolveResult solve_integro(const IntegroSpec& spec, std::size_t t_index, int n_terms = kDefaultSeriesTerms);

/// Solution on the whole forcing grid, with the weighted part's singular lead split off.
GridResult solve_integro_grid(const IntegroSpec& spec, int n_terms = kDefaultSeriesTerms);

}  // namespace sawi

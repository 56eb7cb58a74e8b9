#include "sawi/analytic_solutions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "sawi/error.hpp"
#include "sawi/prabhakar_ops.hpp"
#include "sawi/summation.hpp"

namespace sawi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SawiAtom make_atom(cplx coef, Exponent mu, Exponent kappa, const KernelSpec& k) {
  return SawiAtom{coef, mu, kappa, k.alpha, k.omega};
}

// Probe point inside the region |omega| s^alpha < 1.
double probe_s(const KernelSpec& k) {
  const double w = std::abs(k.omega);
  return w == 0.0 ? 0.5 : 0.5 * std::min(1.0, std::pow(w, -1.0 / k.alpha));
}

// Weighted-datum numerator s^{nu(1-rho)-2} (1 - omega s^alpha)^{gamma nu}.
SawiAtom weighted_numerator(const HilferSpec& hs) {
  const Exponent nu = hs.nu, rho = hs.kernel.rho, gamma = hs.kernel.gamma;
  return make_atom(1.0, nu * (Exponent(1.0) - rho) - Exponent(2.0), -(gamma * nu), hs.kernel);
}

// Regularized numerator s^{-rho-1} (1 - omega s^alpha)^{gamma}.
SawiAtom regularized_numerator(const KernelSpec& k) {
  return make_atom(1.0, -Exponent(k.rho) - Exponent(1.0), -Exponent(k.gamma), k);
}

// Operator symbol s^{-rho} (1 - omega s^alpha)^{gamma}.
SawiAtom operator_symbol(const KernelSpec& k) { return make_atom(1.0, -Exponent(k.rho), -Exponent(k.gamma), k); }

std::optional<double> weighted_lead(const HilferSpec& hs) {
  const double a = (1.0 - hs.nu) * (1.0 - hs.kernel.rho);
  if (a > 0.0 && a < 1.0) return a;
  return std::nullopt;
}

SeriesTemplate build(const SawiAtom& P, const SawiAtom& A, const SawiAtom& B, int n_terms,
                     std::optional<double> lead) {
  if (n_terms < 0) fail(ErrorCode::InvalidArgument, "series template: n_terms must be nonnegative");
  SeriesTemplate tpl;
  tpl.atoms = geometric_expand(P, A, B, n_terms, probe_s(KernelSpec{A.alpha, 1.0, 1.0, A.omega}));
  tpl.terms.reserve(tpl.atoms.atoms.size());
  for (const SawiAtom& a : tpl.atoms.atoms) tpl.terms.push_back(invert_atom(a));
  tpl.lead_exponent = lead;
  return tpl;
}

SeriesTemplate symbol_template(const HilferSpec& hs, bool regularized, int n_terms) {
  const SawiAtom P = regularized ? regularized_numerator(hs.kernel) : weighted_numerator(hs);
  return build(P, operator_symbol(hs.kernel), make_atom(-1.0, 0.0, 0.0, hs.kernel), n_terms,
               regularized ? std::nullopt : weighted_lead(hs));
}

// terms[n](t) for every n; t = 0 is allowed when no term has a negative power.
std::vector<cplx> term_values(const SeriesTemplate& tpl, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "series: t must be nonnegative");
  std::vector<cplx> e(tpl.terms.size());
  for (std::size_t n = 0; n < e.size(); ++n) {
    const TimeTerm& term = tpl.terms[n];
    if (t == 0.0) {
      if (term.power < 0.0) fail(ErrorCode::InvalidArgument, "series: singular at t = 0");
      e[n] = term.power == 0.0 ? term.coef * rgamma(term.beta) : cplx{0.0, 0.0};
      continue;
    }
    const cplx arg = term.omega * std::pow(t, term.alpha);
    e[n] = term.coef * std::pow(t, term.power) * ml3(term.alpha, term.beta, term.gamma, arg, relative_series_tol(term.beta)).value;
  }
  return e;
}

struct Partial {
  cplx sum;
  /// Geometric tail bound from the last two terms plus eps * sum |terms| for roundoff.
  double err;
};

Partial sum_powers(const std::vector<cplx>& e, cplx z) {
  CompensatedComplexSum acc;
  cplx zn{1.0, 0.0};
  double last = 0.0, prev = 0.0, mass = 0.0;
  for (const cplx& en : e) {
    // Vanishing terms stay zero once z^n overflows.
    const cplx v = en == cplx{0.0, 0.0} ? cplx{0.0, 0.0} : zn * en;
    acc.add(v);
    prev = last;
    last = std::abs(v);
    mass += last;
    zn *= z;
  }
  double tail = 0.0;
  if (last > 0.0) {
    if (e.size() < 2 || !(prev > 0.0) || last >= prev) {
      tail = kInf;
    } else {
      const double r = last / prev;
      tail = last * r / (1.0 - r);
    }
  }
  const cplx sum = acc.value();
  if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
    fail(ErrorCode::NonConvergence, "series: partial sum overflowed at |z| = " + std::to_string(std::abs(z)));
  }
  return {sum, tail + std::numeric_limits<double>::epsilon() * mass};
}

double relative(double err, cplx scale) {
  if (err == 0.0) return 0.0;
  return std::abs(scale) > 0.0 ? err / std::abs(scale) : kInf;
}

struct ModeGrid {
  std::vector<double> k;
  std::vector<double> w;
};

ModeGrid mode_grid(const ModeQuadrature& mq, const InitialProfile& g) {
  mq.validate();
  const double k_max = mq.resolved_k_max(g);
  const double h = 2.0 * k_max / mq.nodes;
  ModeGrid mg{std::vector<double>(static_cast<std::size_t>(mq.nodes) + 1),
              std::vector<double>(static_cast<std::size_t>(mq.nodes) + 1, h)};
  // Symmetric about k = 0 so Hermitian integrands give real sums.
  for (int j = 0; j <= mq.nodes; ++j) mg.k[static_cast<std::size_t>(j)] = (j - mq.nodes / 2) * h;
  mg.w.front() = mg.w.back() = 0.5 * h;
  return mg;
}

template <class Symbol>
ProfileResult fourier_profile(const SeriesTemplate& tpl, Symbol symbol, const InitialProfile& g,
                              const std::vector<double>& xs, double t, const ModeQuadrature& mq) {
  g.validate();
  const ModeGrid mg = mode_grid(mq, g);
  const std::vector<cplx> e = term_values(tpl, t);
  ProfileResult out;
  std::vector<cplx> weighted(mg.k.size());
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < mg.k.size(); ++j) {
    const cplx gk = g.fourier_image(mg.k[j]);
    const Partial p = sum_powers(e, symbol(mg.k[j]));
    // Each node's error is measured against the integrand's scale, not its own value.
    worst = std::max(worst, std::abs(gk) * p.err);
    scale = std::max(scale, std::abs(gk * p.sum));
    weighted[j] = mg.w[j] * gk * p.sum;
  }
  out.tail_ratio = relative(worst, scale);
  out.truncation_warning = out.tail_ratio > kTruncationWarnRatio;
  out.values.reserve(xs.size());
  for (double x : xs) {
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < mg.k.size(); ++j) acc.add(weighted[j] * std::exp(cplx{0.0, -mg.k[j] * x}));
    out.values.push_back(acc.value() / (2.0 * std::numbers::pi));
  }
  return out;
}

SolveResult single(const ProfileResult& r) { return SolveResult{r.values.front(), r.tail_ratio, r.truncation_warning}; }

}  // namespace

void AdvDispSpec::validate() const {
  hspec.validate();
  if (!(lap_order > 0.0 && lap_order <= 2.0)) fail(ErrorCode::InvalidArgument, "AdvDispSpec: lap_order must lie in (0, 2]");
  if (!(theta >= 0.0) || !std::isfinite(theta)) fail(ErrorCode::InvalidArgument, "AdvDispSpec: theta must be >= 0");
  if (!std::isfinite(p)) fail(ErrorCode::InvalidArgument, "AdvDispSpec: p must be finite");
}

void HeatSpec::validate() const {
  hspec.validate();
  if (!(diffusivity > 0.0) || !std::isfinite(diffusivity)) {
    fail(ErrorCode::InvalidArgument, "HeatSpec: diffusivity must be positive");
  }
}

void PointwiseSpec::validate() const {
  hspec.validate();
  if (!(std::abs(x) <= 1.0)) fail(ErrorCode::InvalidArgument, "PointwiseSpec: |x| must be <= 1");
  if (!(lambda_coef > 0.0) || !std::isfinite(lambda_coef)) {
    fail(ErrorCode::InvalidArgument, "PointwiseSpec: lambda_coef must be positive");
  }
}

void IntegroSpec::validate() const {
  hspec.validate();
  if (!(delta >= 0.0) || !std::isfinite(delta)) fail(ErrorCode::InvalidArgument, "IntegroSpec: delta must be >= 0");
  forcing.validate();
}

InitialProfile InitialProfile::gaussian(double sigma) {
  InitialProfile g{Kind::Gaussian, sigma};
  g.validate();
  return g;
}

InitialProfile InitialProfile::point_mass() { return InitialProfile{Kind::PointMass, 0.0}; }

cplx InitialProfile::fourier_image(double k) const {
  if (kind == Kind::PointMass) return {1.0, 0.0};
  return {std::exp(-0.5 * sigma * sigma * k * k), 0.0};
}

double InitialProfile::value(double x) const {
  if (kind == Kind::PointMass) fail(ErrorCode::InvalidArgument, "InitialProfile: a point mass has no pointwise value");
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

void InitialProfile::validate() const {
  if (kind == Kind::Gaussian && (!(sigma > 0.0) || !std::isfinite(sigma))) {
    fail(ErrorCode::InvalidArgument, "InitialProfile: sigma must be positive");
  }
}

void ModeQuadrature::validate() const {
  if (nodes < 64 || nodes % 2 != 0) fail(ErrorCode::InvalidArgument, "ModeQuadrature: nodes must be even and >= 64");
  if (!(k_max >= 0.0) || !std::isfinite(k_max)) fail(ErrorCode::InvalidArgument, "ModeQuadrature: k_max must be >= 0");
}

double ModeQuadrature::resolved_k_max(const InitialProfile& g) const {
  if (k_max > 0.0) return k_max;
  if (g.kind == InitialProfile::Kind::PointMass) {
    fail(ErrorCode::InvalidArgument, "ModeQuadrature: point-mass data needs an explicit k_max");
  }
  return 8.0 / g.sigma;
}

SeriesTemplate adv_disp_template(const AdvDispSpec& spec, int n_terms) {
  spec.validate();
  return symbol_template(spec.hspec, spec.regularized, n_terms);
}

SeriesTemplate heat_template(const HeatSpec& spec, int n_terms) {
  spec.validate();
  return symbol_template(spec.hspec, spec.regularized, n_terms);
}

SeriesTemplate pointwise_template(const PointwiseSpec& spec, int n_terms) {
  spec.validate();
  HilferSpec op = spec.hspec;
  op.kernel.omega = -op.kernel.omega;
  return symbol_template(op, true, n_terms);
}

SeriesTemplate integro_template(const IntegroSpec& spec, int n_terms) {
  spec.validate();
  const KernelSpec& k = spec.hspec.kernel;
  const SawiAtom B = make_atom(-1.0, Exponent(k.rho), Exponent(spec.delta), k);
  return build(weighted_numerator(spec.hspec), operator_symbol(k), B, n_terms, weighted_lead(spec.hspec));
}

std::vector<KernelSpec> integro_forcing_kernels(const IntegroSpec& spec, int n_terms) {
  spec.validate();
  const KernelSpec& k = spec.hspec.kernel;
  const SawiAtom B = make_atom(-1.0, Exponent(k.rho), Exponent(spec.delta), k);
  const AtomSeries series = geometric_expand(make_atom(1.0, 0.0, 0.0, k), operator_symbol(k), B, n_terms, probe_s(k));
  std::vector<KernelSpec> out;
  out.reserve(series.atoms.size());
  // s^{mu} (1 - omega s^alpha)^{-kappa} T(s) is the image of the Prabhakar integral (alpha, mu, kappa, omega).
  for (const SawiAtom& a : series.atoms) out.push_back(KernelSpec{k.alpha, a.mu.value(), a.kappa.value(), k.omega});
  return out;
}

cplx adv_disp_symbol(const AdvDispSpec& spec, double k) {
  return cplx{-spec.theta * std::pow(std::abs(k), spec.lap_order), spec.p * k};
}

cplx heat_symbol(const HeatSpec& spec, double k) { return cplx{-spec.diffusivity * k * k, 0.0}; }

SolveResult mode_series(const SeriesTemplate& tpl, cplx z, double t) {
  const Partial p = sum_powers(term_values(tpl, t), z);
  const double ratio = relative(p.err, p.sum);
  return SolveResult{p.sum, ratio, ratio > kTruncationWarnRatio};
}

GridResult mode_series_samples(const SeriesTemplate& tpl, cplx z, const Grid& grid) {
  grid.validate();
  GridResult out{Samples{grid, std::vector<cplx>(grid.n), std::nullopt}};
  std::optional<SingularLead> lead;
  if (tpl.lead_exponent) {
    const double a = *tpl.lead_exponent;
    lead = SingularLead{tpl.terms.front().coef * rgamma(1.0 - a), a};
  }
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double t = grid.t(j);
    if (j == 0 && lead) continue;
    const Partial p = sum_powers(term_values(tpl, t), z);
    out.tail_ratio = std::max(out.tail_ratio, relative(p.err, p.sum));
    out.solution.values[j] = lead ? p.sum - (*lead)(t) : p.sum;
  }
  out.solution.lead = lead;
  out.truncation_warning = out.tail_ratio > kTruncationWarnRatio;
  return out;
}

SolveResult solve_adv_disp(const AdvDispSpec& spec, const InitialProfile& g, double x, double t, int n_terms,
                           const ModeQuadrature& mq) {
  return single(solve_adv_disp_profile(spec, g, {x}, t, n_terms, mq));
}

ProfileResult solve_adv_disp_profile(const AdvDispSpec& spec, const InitialProfile& g, const std::vector<double>& xs,
                                     double t, int n_terms, const ModeQuadrature& mq) {
  const SeriesTemplate tpl = adv_disp_template(spec, n_terms);
  return fourier_profile(tpl, [&](double k) { return adv_disp_symbol(spec, k); }, g, xs, t, mq);
}

SolveResult solve_heat(const HeatSpec& spec, const InitialProfile& g, double x, double t, int n_terms,
                       const ModeQuadrature& mq) {
  return single(solve_heat_profile(spec, g, {x}, t, n_terms, mq));
}

ProfileResult solve_heat_profile(const HeatSpec& spec, const InitialProfile& g, const std::vector<double>& xs,
                                 double t, int n_terms, const ModeQuadrature& mq) {
  const SeriesTemplate tpl = heat_template(spec, n_terms);
  return fourier_profile(tpl, [&](double k) { return heat_symbol(spec, k); }, g, xs, t, mq);
}

SolveResult solve_pointwise(const PointwiseSpec& spec, double t, int n_terms) {
  if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "solve_pointwise: t must be positive");
  const SeriesTemplate tpl = pointwise_template(spec, n_terms);
  return mode_series(tpl, -spec.lambda_coef * (1.0 - spec.x), t);
}

GridResult solve_integro_grid(const IntegroSpec& spec, int n_terms) {
  const SeriesTemplate tpl = integro_template(spec, n_terms);
  const Grid& grid = spec.forcing.grid;
  GridResult out = mode_series_samples(tpl, spec.lambda_coef, grid);
  for (cplx& v : out.solution.values) v *= spec.M_init;
  if (out.solution.lead) out.solution.lead->coef *= spec.M_init;
  if (spec.M_init == cplx{0.0, 0.0}) {
    out.tail_ratio = 0.0;
    out.solution.lead.reset();
  }

  const std::vector<KernelSpec> kernels = integro_forcing_kernels(spec, n_terms);
  const std::size_t used = spec.lambda_coef == cplx{0.0, 0.0} ? 1 : kernels.size();
  std::vector<CompensatedComplexSum> acc(grid.n);
  std::vector<double> last(grid.n, 0.0), prev(grid.n, 0.0);
  cplx ln{1.0, 0.0};
  for (std::size_t n = 0; n < used; ++n) {
    const Samples term = prabhakar_integral_num(spec.forcing, kernels[n]);
    for (std::size_t j = 0; j < grid.n; ++j) {
      const cplx v = ln * term.values[j];
      acc[j].add(v);
      prev[j] = last[j];
      last[j] = std::abs(v);
    }
    ln *= spec.lambda_coef;
  }
  double forcing_ratio = 0.0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    const cplx s = acc[j].value();
    out.solution.values[j] += s;
    if (used < kernels.size() || last[j] == 0.0) continue;
    double tail = kInf;
    if (used >= 2 && prev[j] > 0.0 && last[j] < prev[j]) {
      const double r = last[j] / prev[j];
      tail = last[j] * r / (1.0 - r);
    }
    forcing_ratio = std::max(forcing_ratio, std::abs(s) > 0.0 ? tail / std::abs(s) : kInf);
  }
  out.tail_ratio = std::max(out.tail_ratio, forcing_ratio);
  out.truncation_warning = out.tail_ratio > kTruncationWarnRatio;
  return out;
}

SolveResult solve_integro(const IntegroSpec& spec, std::size_t t_index, int n_terms) {
  if (t_index >= spec.forcing.grid.n) fail(ErrorCode::InvalidArgument, "solve_integro: t_index beyond the forcing grid");
  const GridResult r = solve_integro_grid(spec, n_terms);
  return SolveResult{r.solution.at(t_index), r.tail_ratio, r.truncation_warning};
}

}  // namespace sawi

#include "sawi/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "sawi/analytic_solutions.hpp"
#include "sawi/error.hpp"
#include "sawi/ml_kernels.hpp"
#include "sawi/prabhakar_ops.hpp"
#include "sawi/reference_solver.hpp"
#include "sawi/sawi_algebra.hpp"
#include "sawi/sawi_transform.hpp"

namespace sawi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Settings {
  std::optional<double> dt;
  double tol = kSeriesTol;
  bool serial = false;

  double step(double fallback) const { return dt.value_or(fallback); }
};

CheckResult below(std::string name, double measured, double bound) {
  return CheckResult{std::move(name), measured, bound, false, std::isfinite(measured) && measured < bound, {}};
}

CheckResult at_least(std::string name, double measured, double bound) {
  return CheckResult{std::move(name), measured, bound, true, std::isfinite(measured) && measured >= bound, {}};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

using Checks = std::vector<CheckResult>;
using CheckGroup = std::function<Checks(const Settings&)>;

// Runs a group, turning an exception into one failing check.
Checks guarded(const std::string& name, const CheckGroup& group, const Settings& st) {
  try {
    return group(st);
  } catch (const std::exception& e) {
    CheckResult r{name + ".error", kNaN, 0.0, false, false, e.what()};
    return {r};
  }
}

Samples monomial(const Grid& g, double p) {
  return Samples::from_function(g, [p](double t) { return cplx{t == 0.0 ? (p == 0.0 ? 1.0 : 0.0) : std::pow(t, p)}; });
}

// Order-q Riemann-Liouville integral of t^p (q < 0 differentiates).
double rl_monomial(double p, double q, double t) {
  if (t == 0.0) return 0.0;
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + q) * std::pow(t, p + q);
}

// Kernel with alpha in [alpha_lo, alpha_hi] and |omega| s^alpha in [0.2, 0.8].
KernelSpec draw_spec(std::mt19937& rng, double s, double alpha_lo, double alpha_hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KernelSpec spec;
  spec.alpha = alpha_lo + (alpha_hi - alpha_lo) * u(rng);
  spec.rho = 0.3 + 1.5 * u(rng);
  spec.gamma = -0.5 + 2.5 * u(rng);
  const double mag = (0.2 + 0.6 * u(rng)) / std::pow(s, spec.alpha);
  spec.omega = u(rng) < 0.5 ? mag : -mag;
  return spec;
}

// Largest Laguerre rule whose nodes keep the kernel's series argument in range; 0 if none.
int supported_nodes(const KernelSpec& spec, double s) {
  for (int n : {64, 48, 32, 24, 16}) {
    const double x_max = gauss_laguerre(n, spec.rho - 1.0).nodes.back();
    if (std::abs(spec.omega) * std::pow(s * x_max, spec.alpha) <= kMaxSeriesArgument) return n;
  }
  return 0;
}

double max_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---- acceptance groups ----

Checks ml_reductions(const Settings& st) {
  double worst = 0.0;
  const auto gap = [&](cplx a, cplx b) { worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b))); };
  for (int i = 0; i <= 40; ++i) {
    const double x = -5.0 + 0.25 * i;
    for (const cplx z : {cplx{x, 0.0}, cplx{x, 0.5 * x}}) {
      gap(ml3(1.0, 1.0, 1.0, z, st.tol).value, std::exp(z));
      if (z != cplx{0.0, 0.0}) gap(ml3(2.0, 2.0, 1.0, z * z, st.tol).value, std::sinh(z) / z);
      for (double alpha : {0.5, 0.9, 1.7}) {
        for (double rho : {0.4, 1.0, 2.3}) {
          gap(ml3(alpha, rho, 1.0, z, st.tol).value, ml2(alpha, rho, z, st.tol).value);
          gap(ml3(alpha, rho, 0.0, z, st.tol).value, cplx{rgamma(rho), 0.0});
        }
      }
    }
  }
  return {below("ml.reductions", worst, 1e-12)};
}

Checks kernel_images(const Settings&) {
  std::mt19937 rng(20240611);
  double worst = 0.0;
  int checked = 0;
  for (double s : {0.5, 1.0, 2.0}) {
    for (int draw = 0; draw < 4; ++draw) {
      const KernelSpec spec = draw_spec(rng, s, 1.0, 1.0);
      const int nodes = supported_nodes(spec, s);
      if (nodes == 0) continue;
      const cplx num =
          sawi_forward_numeric([&](double t) { return prabhakar_kernel(spec, t); }, s, {nodes, spec.rho - 1.0});
      worst = std::max(worst, rel(num, sawi_ml_image(spec, s)));
      ++checked;
    }
  }
  return {below("sawi.kernel_image", worst, 1e-5), at_least("sawi.kernel_image_draws", checked, 5)};
}

Checks operator_images(const Settings& st) {
  const Grid g = Grid::covering(12.0, st.step(1.0 / 512));
  double worst = 0.0;
  for (double p : {1.0, 2.0}) {
    const Samples f = monomial(g, p);
    const std::vector<cplx> derivs = p == 1.0 ? std::vector<cplx>{0.0, 1.0} : std::vector<cplx>{0.0, 0.0};
    for (double s : {0.3, 0.6}) {
      const cplx T = std::tgamma(p + 1.0) * std::pow(s, p - 1.0);
      for (double rho : {0.6, 1.4}) {
        // Order 1.4 acting on t is singular at 0 (plain) or identically zero (regularized).
        if (rho > 1.0 && p < 2.0) continue;
        const KernelSpec spec{0.7, rho, 0.4, -0.3};
        const int m = static_cast<int>(std::ceil(rho));
        const HilferSpec hs{spec, 0.0};
        const InitialData zero{std::vector<cplx>(static_cast<std::size_t>(m), 0.0), std::nullopt};
        const InitialData exact{std::vector<cplx>(derivs.begin(), derivs.begin() + m), std::nullopt};
        worst = std::max(worst, rel(sawi_forward_samples(prabhakar_derivative_num(f, spec, m), s),
                                    operator_image(OperatorKind::Prabhakar, T, hs, zero, m, s)));
        worst = std::max(worst, rel(sawi_forward_samples(reg_prabhakar_derivative_num(f, spec, m), s),
                                    operator_image(OperatorKind::RegPrabhakar, T, hs, exact, m, s)));
      }
      const HilferSpec hs{KernelSpec{0.7, 0.6, 0.4, -0.3}, 0.3};
      worst = std::max(worst, rel(sawi_forward_samples(hilfer_prabhakar_num(f, hs), s),
                                  operator_image(OperatorKind::HilferPrabhakar, T, hs, InitialData{{}, cplx{0.0}}, 1, s)));
      worst = std::max(worst, rel(sawi_forward_samples(reg_hilfer_prabhakar_num(f, hs), s),
                                  operator_image(OperatorKind::RegHilferPrabhakar, T, hs, InitialData{{0.0}, std::nullopt}, 1, s)));
    }
  }
  return {below("ops.operator_images", worst, 2e-3)};
}

Checks convolution_rule(const Settings&) {
  using F = TimeFunction;
  const std::pair<F, F> pairs[] = {
      {[](double) { return cplx{1.0}; }, [](double) { return cplx{1.0}; }},
      {[](double t) { return cplx{t}; }, [](double t) { return cplx{std::exp(-t)}; }},
      {[](double t) { return cplx{std::exp(-t)}; }, [](double t) { return cplx{std::exp(-2.0 * t)}; }},
  };
  double worst = 0.0;
  for (const auto& [f, g] : pairs) {
    for (double s : {0.5, 1.0, 2.0}) {
      const cplx lhs = sawi_forward_numeric([&](double t) { return convolve_numeric(f, g, t); }, s);
      const cplx rhs = s * s * sawi_forward_numeric(f, s) * sawi_forward_numeric(g, s);
      worst = std::max(worst, rel(lhs, rhs));
    }
  }
  return {below("sawi.convolution_rule", worst, 1e-5)};
}

Checks gamma_zero_reductions(const Settings& st) {
  const Grid g = Grid::covering(1.0, st.step(1.0 / 512));
  const double rho = 0.5;
  const KernelSpec spec{0.8, rho, 0.0, 0.7};
  const Samples t1 = monomial(g, 1.0), t2 = monomial(g, 2.0);
  double worst = 0.0;
  // Relative error away from the origin, where one-sided stencils meet t^{1/2}-type outputs.
  const auto gap = [&](const Samples& num, double p, double q) {
    for (std::size_t j = 0; j < g.n; ++j) {
      if (g.t(j) < 0.1) continue;
      const double exact = rl_monomial(p, q, g.t(j));
      worst = std::max(worst, std::abs(num.values[j] - exact) / std::abs(exact));
    }
  };
  gap(prabhakar_integral_num(t1, spec), 1.0, rho);
  gap(prabhakar_derivative_num(t1, spec, 1), 1.0, -rho);
  gap(reg_prabhakar_derivative_num(t2, spec, 1), 2.0, -rho);
  gap(hilfer_prabhakar_num(t1, HilferSpec{spec, 0.5}), 1.0, -rho);
  gap(reg_hilfer_prabhakar_num(t2, HilferSpec{spec, 0.5}), 2.0, -rho);
  return {below("ops.gamma0_reductions", worst, 1e-3)};
}

Checks pointwise_cross(const Settings&) {
  const PointwiseSpec specs[] = {
      {HilferSpec{KernelSpec{0.8, 0.5, 0.0, 0.0}, 0.5}, 1.0, 0.0},
      {HilferSpec{KernelSpec{0.8, 1.0, 0.0, 0.0}, 0.5}, 1.0, 0.0},
      {HilferSpec{KernelSpec{0.8, 0.6, 0.4, 0.2}, 0.5}, 1.0, 0.3},
  };
  double gap_fine = 0.0, ratio = std::numeric_limits<double>::infinity();
  for (const PointwiseSpec& spec : specs) {
    const SeriesTemplate tpl = pointwise_template(spec, kDefaultSeriesTerms);
    double gaps[2];
    for (int r = 0; r < 2; ++r) {
      const Grid grid = Grid::covering(2.0, 1.0 / (512 << r));
      const Samples series = mode_series_samples(tpl, -spec.lambda_coef * (1.0 - spec.x), grid).solution;
      gaps[r] = max_gap(series.values, volterra_scalar_solve(oracle_problem(spec), grid).values);
    }
    gap_fine = std::max(gap_fine, gaps[1]);
    ratio = std::min(ratio, gaps[0] / gaps[1]);
  }
  return {below("solutions.pointwise_gap", gap_fine, 5e-3), at_least("solutions.pointwise_refinement_ratio", ratio, 1.8)};
}

Checks heat_cross(const Settings& st) {
  const HeatSpec spec{HilferSpec{KernelSpec{0.9, 0.8, 0.3, -0.1}, 0.5}, 0.5, true};
  const InitialProfile g = InitialProfile::gaussian(1.0);
  std::vector<double> xs;
  for (int i = 0; i <= 60; ++i) xs.push_back(-3.0 + 0.1 * i);
  const ProfileResult series = solve_heat_profile(spec, g, xs, 0.5, 128, ModeQuadrature{6.0, 2048});
  const std::vector<cplx> oracle =
      spectral_pde_oracle(spec, g, xs, 0.5, Grid::covering(0.5, 1.0 / 512), ModeQuadrature{}, st.serial);
  return {below("solutions.heat_gap", max_gap(series.values, oracle), 5e-3),
          below("solutions.heat_tail_ratio", series.tail_ratio, kTruncationWarnRatio)};
}

Checks residual_gates(const Settings& st) {
  const Grid grid = Grid::covering(1.0, st.step(1.0 / 512));
  Checks out;
  const auto gate = [&](const std::string& name, const ResidualProblem& prob, const Samples& cand, const HilferSpec& hs,
                        cplx c) {
    const double res = residual_check(prob, cand).max_abs_residual;
    const double cal = calibration_residual(hs, c, grid).max_abs_residual;
    out.push_back(below(name + "_residual", res, 5e-3));
    out.push_back(below(name + "_calibration_ratio", res / cal, 3.0));
  };
  const AdvDispSpec adv{HilferSpec{KernelSpec{0.8, 0.6, 0.5, -0.2}, 0.4}, 0.3, 0.7, 1.5, false};
  const cplx c_adv = adv_disp_symbol(adv, 1.0);
  gate("solutions.weighted_advdisp", adv_disp_mode_problem(adv, 1.0),
       mode_series_samples(adv_disp_template(adv, 128), c_adv, grid).solution, adv.hspec, c_adv);
  const HeatSpec heat{HilferSpec{KernelSpec{0.9, 0.5, 0.3, -0.1}, 1.0}, 1.0, false};
  const cplx c_heat = heat_symbol(heat, 1.0);
  gate("solutions.weighted_heat", heat_mode_problem(heat, 1.0),
       mode_series_samples(heat_template(heat, 128), c_heat, grid).solution, heat.hspec, c_heat);
  const IntegroSpec integro{HilferSpec{KernelSpec{0.7, 0.4, 0.2, -0.1}, 0.5}, 0.5, 0.3, 1.0,
                            Samples::from_function(grid, [](double t) { return cplx{std::exp(-t)}; })};
  gate("solutions.integro", integro_problem(integro), solve_integro_grid(integro).solution, integro.hspec,
       integro.lambda_coef);
  return out;
}

Checks initial_recovery(const Settings&) {
  const InitialProfile g = InitialProfile::gaussian(1.0);
  const AdvDispSpec adv{HilferSpec{KernelSpec{0.8, 0.6, 0.5, -0.2}, 0.4}, 0.3, 0.7, 1.5, true};
  const HeatSpec heat{HilferSpec{KernelSpec{0.9, 0.8, 0.3, -0.1}, 0.5}, 0.5, true};
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const ProfileResult a = solve_adv_disp_profile(adv, g, xs, 1e-6);
  const ProfileResult h = solve_heat_profile(heat, g, xs, 1e-6);
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max({worst, std::abs(a.values[i] - g.value(xs[i])), std::abs(h.values[i] - g.value(xs[i]))});
  }
  return {below("solutions.initial_recovery", worst, 1e-3)};
}

Checks talbot_round_trip(const Settings&) {
  std::mt19937 rng(99);
  double worst = 0.0;
  for (int draw = 0; draw < 5; ++draw) {
    const KernelSpec spec = draw_spec(rng, 1.0, 0.4, 1.6);
    for (double t : {0.5, 1.0, 2.0}) {
      const cplx inv = inverse_sawi_numeric([&](cplx s) { return sawi_ml_image(spec, s); }, t);
      worst = std::max(worst, rel(inv, prabhakar_kernel(spec, t)));
    }
  }
  return {below("sawi.talbot_round_trip", worst, 1e-4)};
}

// ---- suite-only invariants ----

Checks ml_invariants(const Settings& st) {
  double zero = 0.0, prim = 0.0;
  for (double alpha : {0.3, 1.0, 2.5}) {
    for (double rho : {0.2, 1.0, 3.7}) {
      for (double gamma : {-1.5, 0.0, 2.0}) {
        zero = std::max(zero, std::abs(ml3(alpha, rho, gamma, 0.0, st.tol).value - rgamma(rho)));
      }
      // The first primitive differentiates back to the kernel.
      const KernelSpec spec{alpha, rho, 0.7, -0.4};
      const double t = 0.8, h = 1e-5;
      const cplx fd = (kernel_antiderivative(spec, t + h) - kernel_antiderivative(spec, t - h)) / (2.0 * h);
      prim = std::max(prim, rel(fd, prabhakar_kernel(spec, t)));
    }
  }
  return {below("ml.zero_argument", zero, 1e-15), below("ml.primitive_derivative", prim, 1e-7)};
}

Checks sawi_invariants(const Settings&) {
  double pairs = 0.0;
  pairs = std::max(pairs, rel(inverse_sawi_numeric([](cplx s) { return 1.0 / s; }, 5.0), 1.0));
  pairs = std::max(pairs, rel(inverse_sawi_numeric([](cplx s) { return std::pow(s, -0.5); }, 1.0), 1.0 / std::tgamma(1.5)));
  pairs = std::max(pairs, rel(inverse_sawi_numeric([](cplx s) { return 1.0 / (s * (1.0 - 0.5 * s)); }, 1.0), std::exp(0.5)));
  // Term-wise inversion of a geometric expansion against the contour inverse of its image.
  const KernelSpec k{0.8, 0.6, 0.5, -0.2};
  const SawiAtom P{1.0, Exponent(-1.6), Exponent(-0.5), k.alpha, k.omega};
  const SawiAtom A{1.0, Exponent(-0.6), Exponent(-0.5), k.alpha, k.omega};
  const SawiAtom B{1.0, Exponent(0.0), Exponent(0.0), k.alpha, k.omega};
  const AtomSeries series = geometric_expand(P, A, B, 40, 0.5);
  std::vector<TimeTerm> terms;
  for (const SawiAtom& a : series.atoms) terms.push_back(invert_atom(a));
  const auto image = [&](cplx s) { return atom_eval(P, s) / (atom_eval(A, s) + 1.0); };
  const double t = 0.7;
  const double algebra = rel(series_eval_time(terms, t).value, inverse_sawi_numeric(image, t));
  return {below("sawi.talbot_known_pairs", pairs, 1e-10), below("sawi.termwise_inversion", algebra, 1e-6)};
}

Checks ops_invariants(const Settings& st) {
  const KernelSpec spec{0.8, 0.6, 0.0, -0.5};
  using Op = std::function<Samples(const Samples&)>;
  const std::vector<std::pair<Op, double>> ops = {
      {[&](const Samples& f) { return prabhakar_integral_num(f, spec); }, 0.6},
      {[&](const Samples& f) { return prabhakar_derivative_num(f, spec, 1); }, -0.6},
      {[&](const Samples& f) { return reg_prabhakar_derivative_num(f, spec, 1); }, -0.6},
      {[&](const Samples& f) { return hilfer_prabhakar_num(f, HilferSpec{spec, 0.4}); }, -0.6},
      {[&](const Samples& f) { return reg_hilfer_prabhakar_num(f, HilferSpec{spec, 0.4}); }, -0.6},
  };
  const double base = st.step(1.0 / 32);
  double ratio = std::numeric_limits<double>::infinity();
  for (const auto& [op, q] : ops) {
    double prev = 0.0;
    for (double dt : {base, base / 2, base / 4}) {
      const Grid g = Grid::covering(1.0, dt);
      const Samples out = op(monomial(g, 3.0));
      double err = 0.0;
      for (std::size_t j = 0; j < g.n; ++j) err = std::max(err, std::abs(out.values[j] - rl_monomial(3, q, g.t(j))));
      if (prev > 0.0) ratio = std::min(ratio, prev / err);
      prev = err;
    }
  }
  // The integral undoes the regularized derivative on data vanishing at 0.
  const Grid g = Grid::covering(1.0, st.step(1.0 / 512));
  const KernelSpec k{0.7, 0.6, 0.4, -0.3};
  const Samples f = Samples::from_function(g, [](double t) { return cplx{std::sin(t) + t * t}; });
  const Samples back = prabhakar_integral_num(reg_prabhakar_derivative_num(f, k, 1), KernelSpec{k.alpha, k.rho, k.gamma, k.omega});
  return {at_least("ops.refinement_ratio", ratio, 1.8), below("ops.left_inverse", max_gap(back.values, f.values), 2.0 * g.dt)};
}

Checks solution_invariants(const Settings&) {
  const InitialProfile g = InitialProfile::gaussian(1.0);
  const HeatSpec classical{HilferSpec{KernelSpec{0.7, 1.0, 0.0, 0.0}, 0.5}, 1.0, true};
  const double v = 2.0;
  const double exact = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * v);
  const double heat = std::abs(solve_heat(classical, g, 0.0, 0.5, 128).value - exact) / exact;
  const PointwiseSpec relax{HilferSpec{KernelSpec{0.8, 1.0, 0.0, 0.2}, 0.3}, 1.0, 0.0};
  const double expo = std::abs(solve_pointwise(relax, 1.0).value - std::exp(-1.0)) / std::exp(-1.0);
  return {below("solutions.classical_heat", heat, 1e-9), below("solutions.exponential_relaxation", expo, 1e-12)};
}

struct CriterionDef {
  int id;
  const char* key;
  const char* title;
  double time_limit;
  CheckGroup group;
};

const std::vector<CriterionDef>& criteria() {
  static const std::vector<CriterionDef> defs = {
      {1, "ml_reductions", "Mittag-Leffler reductions", 1.0, ml_reductions},
      {2, "kernel_images", "Laguerre transform of the kernel", 5.0, kernel_images},
      {3, "operator_images", "operator images of t and t^2", 30.0, operator_images},
      {4, "convolution_rule", "convolution rule", 0.0, convolution_rule},
      {5, "gamma_zero_reductions", "gamma = 0 reductions of the operators", 0.0, gamma_zero_reductions},
      {6, "pointwise_cross", "pointwise relaxation: series vs Volterra oracle", 60.0, pointwise_cross},
      {7, "heat_cross", "regularized heat: series vs spectral oracle", 120.0, heat_cross},
      {8, "residual_gates", "weighted-datum residual gates", 0.0, residual_gates},
      {9, "initial_recovery", "initial-condition recovery", 0.0, initial_recovery},
      {10, "talbot_round_trip", "Talbot round trip of the kernel image", 0.0, talbot_round_trip},
  };
  return defs;
}

Settings settings(const ValidateOptions& o) { return Settings{o.dt, o.tol.value_or(kSeriesTol), o.serial}; }

}  // namespace

bool Criterion::pass() const {
  if (checks.empty()) return false;
  for (const CheckResult& c : checks) {
    if (!c.pass) return false;
  }
  return time_limit <= 0.0 || seconds < time_limit;
}

Suite parse_suite(std::string_view name) {
  if (name == "ml") return Suite::Ml;
  if (name == "sawi") return Suite::Sawi;
  if (name == "ops") return Suite::Ops;
  if (name == "solutions") return Suite::Solutions;
  if (name == "all") return Suite::All;
  fail(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

std::vector<Criterion> run_acceptance(const ValidateOptions& options) {
  Settings st = settings(options);
  st.dt.reset();
  std::vector<Criterion> out;
  for (const CriterionDef& d : criteria()) {
    Criterion c{d.id, d.title, {}, 0.0, d.time_limit};
    const auto start = std::chrono::steady_clock::now();
    c.checks = guarded(d.key, d.group, st);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CheckResult> run_suite(Suite suite, const ValidateOptions& options) {
  const Settings st = settings(options);
  std::vector<std::pair<const char*, CheckGroup>> groups;
  const auto add_criteria = [&](std::initializer_list<int> ids) {
    for (int id : ids) {
      const CriterionDef& d = criteria()[static_cast<std::size_t>(id - 1)];
      groups.emplace_back(d.key, d.group);
    }
  };
  if (suite == Suite::Ml || suite == Suite::All) {
    add_criteria({1});
    groups.emplace_back("ml", ml_invariants);
  }
  if (suite == Suite::Sawi || suite == Suite::All) {
    add_criteria({2, 4, 10});
    groups.emplace_back("sawi", sawi_invariants);
  }
  if (suite == Suite::Ops || suite == Suite::All) {
    add_criteria({3, 5});
    groups.emplace_back("ops", ops_invariants);
  }
  if (suite == Suite::Solutions || suite == Suite::All) {
    add_criteria({6, 7, 8, 9});
    groups.emplace_back("solutions", solution_invariants);
  }
  std::vector<CheckResult> out;
  for (const auto& [name, group] : groups) {
    for (CheckResult& r : guarded(name, group, st)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sawi

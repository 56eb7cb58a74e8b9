#include "sawi/reference_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "sawi/error.hpp"
#include "sawi/prabhakar_ops.hpp"
#include "sawi/summation.hpp"

namespace sawi {

namespace {

// Runs fn(i) for i in [0, n); each index is handled by exactly one thread.
void for_each_index(std::size_t n, bool serial, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      serial ? 1 : std::min<std::size_t>(n, std::max(1U, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Index of t on grid; t must be a node.
std::size_t node_index(double t, const Grid& grid) {
  grid.validate();
  if (!(t >= 0.0) || t > grid.t_end() * (1.0 + 1e-12)) {
    fail(ErrorCode::InvalidArgument, "spectral_pde_oracle: t must lie in [0, t_end]");
  }
  const double r = t / grid.dt;
  const double j = std::round(r);
  if (std::abs(r - j) > 1e-9 * std::max(1.0, r)) {
    fail(ErrorCode::InvalidArgument, "spectral_pde_oracle: t must be a grid node");
  }
  return static_cast<std::size_t>(j);
}

// psi_j from precomputed weights; psi is filled up to values.size().
void step(cplx c, cplx psi0, const std::vector<cplx>& w, std::vector<cplx>& psi) {
  const cplx denom = 1.0 - c * w[0];
  if (!(std::abs(denom) > 1e-14)) fail(ErrorCode::SingularStep, "volterra_scalar_solve: 1 - c w_0 vanishes");
  psi[0] = psi0;
  for (std::size_t j = 1; j < psi.size(); ++j) {
    CompensatedComplexSum history;
    for (std::size_t i = 1; i < j; ++i) history.add(w[j - i] * psi[i]);
    psi[j] = (psi0 + c * history.value()) / denom;
  }
}

template <class Symbol>
std::vector<cplx> spectral(const HilferSpec& hs, Symbol symbol, const InitialProfile& g,
                           const std::vector<double>& xs, double t, const Grid& grid, const ModeQuadrature& mq,
                           bool serial) {
  g.validate();
  mq.validate();
  const std::size_t last = node_index(t, grid);
  const double k_max = mq.resolved_k_max(g);
  const auto n_modes = static_cast<std::size_t>(mq.nodes) + 1;
  const double h = 2.0 * k_max / mq.nodes;

  std::vector<cplx> mode_value(n_modes, cplx{1.0, 0.0});
  if (last > 0) {
    const Grid sub{grid.dt, last + 1};
    const std::vector<cplx> w = volterra_weights(hs.kernel, sub);
    for_each_index(n_modes, serial, [&](std::size_t j) {
      const double k = -k_max + static_cast<double>(j) * h;
      std::vector<cplx> psi(sub.n);
      step(symbol(k), 1.0, w, psi);
      mode_value[j] = psi.back();
    });
  }
  std::vector<cplx> out;
  out.reserve(xs.size());
  for (double x : xs) {
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < n_modes; ++j) {
      const double k = -k_max + static_cast<double>(j) * h;
      const double wt = (j == 0 || j + 1 == n_modes) ? 0.5 * h : h;
      acc.add(wt * g.fourier_image(k) * mode_value[j] * std::exp(cplx{0.0, -k * x}));
    }
    out.push_back(acc.value() / (2.0 * std::numbers::pi));
  }
  return out;
}

}  // namespace

void ScalarVolterraProblem::validate() const {
  hspec.validate();
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || !std::isfinite(psi0.real()) ||
      !std::isfinite(psi0.imag())) {
    fail(ErrorCode::InvalidArgument, "ScalarVolterraProblem: c and psi0 must be finite");
  }
}

std::vector<cplx> volterra_weights(const KernelSpec& kernel, const Grid& grid) {
  grid.validate();
  std::vector<cplx> K(grid.n);
  for (std::size_t m = 1; m < grid.n; ++m) K[m] = kernel_primitive(kernel, grid.t(m), 1);
  std::vector<cplx> w(grid.n - 1);
  w[0] = K[1];
  for (std::size_t m = 1; m + 1 < grid.n; ++m) w[m] = K[m + 1] - K[m];
  return w;
}

Samples volterra_scalar_solve(const ScalarVolterraProblem& prob, const Grid& grid) {
  prob.validate();
  const std::vector<cplx> w = volterra_weights(prob.hspec.kernel, grid);
  Samples out{grid, std::vector<cplx>(grid.n), std::nullopt};
  step(prob.c, prob.psi0, w, out.values);
  return out;
}

std::vector<cplx> spectral_pde_oracle(const AdvDispSpec& spec, const InitialProfile& g,
                                      const std::vector<double>& xs, double t, const Grid& grid,
                                      const ModeQuadrature& mq, bool serial) {
  spec.validate();
  if (!spec.regularized) fail(ErrorCode::InvalidArgument, "spectral_pde_oracle: regularized problems only");
  return spectral(spec.hspec, [&](double k) { return adv_disp_symbol(spec, k); }, g, xs, t, grid, mq, serial);
}

std::vector<cplx> spectral_pde_oracle(const HeatSpec& spec, const InitialProfile& g,
                                      const std::vector<double>& xs, double t, const Grid& grid,
                                      const ModeQuadrature& mq, bool serial) {
  spec.validate();
  if (!spec.regularized) fail(ErrorCode::InvalidArgument, "spectral_pde_oracle: regularized problems only");
  return spectral(spec.hspec, [&](double k) { return heat_symbol(spec, k); }, g, xs, t, grid, mq, serial);
}

ResidualReport residual_check(const ResidualProblem& prob, const Samples& candidate) {
  prob.hspec.validate();
  candidate.validate();
  const Grid& grid = candidate.grid;
  if (grid.n < kResidualMinNodes) fail(ErrorCode::GridTooCoarse, "residual_check: candidate needs at least 512 nodes");
  if (prob.forcing) {
    prob.forcing->validate();
    if (prob.forcing->grid.n != grid.n || prob.forcing->grid.dt != grid.dt) {
      fail(ErrorCode::InvalidArgument, "residual_check: forcing grid differs from the candidate grid");
    }
  }
  const Samples lhs = prob.regularized ? reg_hilfer_prabhakar_num(candidate, prob.hspec)
                                       : hilfer_prabhakar_num(candidate, prob.hspec);
  std::optional<Samples> integral;
  if (prob.integral_kernel && prob.integral_coef != cplx{0.0, 0.0}) {
    integral = prabhakar_integral_num(candidate, *prob.integral_kernel);
  }

  ResidualReport report;
  const std::size_t first = (grid.n + 19) / 20;
  report.interior_range = {first, grid.n - 1};
  for (std::size_t j = first; j < grid.n; ++j) {
    cplx rhs = prob.c * candidate.at(j);
    if (integral) rhs += prob.integral_coef * integral->values[j];
    if (prob.forcing) rhs += prob.forcing->at(j);
    const double r = std::abs(lhs.values[j] - rhs);
    if (!(r <= report.max_abs_residual)) {
      report.max_abs_residual = r;
      report.node_of_max = j;
    }
  }
  return report;
}

ResidualProblem adv_disp_mode_problem(const AdvDispSpec& spec, double k) {
  spec.validate();
  return ResidualProblem{spec.hspec, spec.regularized, adv_disp_symbol(spec, k), 0.0, std::nullopt, std::nullopt};
}

ResidualProblem heat_mode_problem(const HeatSpec& spec, double k) {
  spec.validate();
  return ResidualProblem{spec.hspec, spec.regularized, heat_symbol(spec, k), 0.0, std::nullopt, std::nullopt};
}

ResidualProblem pointwise_problem(const PointwiseSpec& spec) {
  const ScalarVolterraProblem o = oracle_problem(spec);
  return ResidualProblem{o.hspec, true, o.c, 0.0, std::nullopt, std::nullopt};
}

ResidualProblem integro_problem(const IntegroSpec& spec) {
  spec.validate();
  const KernelSpec& k = spec.hspec.kernel;
  return ResidualProblem{spec.hspec, false, 0.0, spec.lambda_coef, KernelSpec{k.alpha, k.rho, spec.delta, k.omega},
                         spec.forcing};
}

ScalarVolterraProblem oracle_problem(const PointwiseSpec& spec) {
  spec.validate();
  HilferSpec op = spec.hspec;
  op.kernel.omega = -op.kernel.omega;
  return ScalarVolterraProblem{-spec.lambda_coef * (1.0 - spec.x), op, 1.0};
}

ResidualReport calibration_residual(const HilferSpec& hspec, cplx c, const Grid& grid) {
  const Samples psi = volterra_scalar_solve(ScalarVolterraProblem{c, hspec, 1.0}, grid);
  return residual_check(ResidualProblem{hspec, true, c, 0.0, std::nullopt, std::nullopt}, psi);
}

}  // namespace sawi

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <functional>

#include "oracles.hpp"
#include "sawi/error.hpp"
#include "sawi/prabhakar_ops.hpp"
#include "sawi/sawi_transform.hpp"
#include "test_util.hpp"

using Catch::Approx;
using sawi::cplx;
using sawi::ErrorCode;
using sawi::Grid;
using sawi::HilferSpec;
using sawi::KernelSpec;
using sawi::Samples;
using testutil::rel;
using testutil::throws_code;

namespace {

Samples monomial(const Grid& g, double p) {
  return Samples::from_function(g, [p](double t) { return cplx{t == 0.0 ? (p == 0.0 ? 1.0 : 0.0) : std::pow(t, p)}; });
}

// Gamma(p+1)/Gamma(p+1+q) t^{p+q}: the order-q Riemann-Liouville integral of t^p (q < 0 differentiates).
double rl_monomial(double p, double q, double t) {
  if (t == 0.0) return 0.0;
  return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + q) * std::pow(t, p + q);
}

// max_j |num_j - exact_j| / |exact_j| over nodes with t_j >= t_min.
double max_rel_gap(const Samples& num, const std::function<double(double)>& exact, double t_min) {
  double gap = 0.0;
  for (std::size_t j = 0; j < num.grid.n; ++j) {
    const double t = num.grid.t(j);
    if (t < t_min) continue;
    gap = std::max(gap, std::abs(num.values[j] - exact(t)) / std::abs(exact(t)));
  }
  return gap;
}

}  // namespace

TEST_CASE("prabhakar_integral_num examples", "[prabhakar_ops]") {
  const Grid g = Grid::covering(1.0, 1.0 / 512);
  const Samples one = Samples::constant(g, 1.0);

  SECTION("unit kernel integrates plainly") {
    const Samples out = prabhakar_integral_num(one, KernelSpec{0.7, 1.0, 0.0, 0.4});
    for (std::size_t j = 0; j < g.n; ++j) CHECK(std::abs(out.values[j] - g.t(j)) < 1e-13);
  }
  SECTION("half integral of one") {
    const Samples out = prabhakar_integral_num(one, KernelSpec{0.7, 0.5, 0.0, 0.0});
    CHECK(out.values.back().real() == Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
  }
  SECTION("constant density reproduces the kernel antiderivative") {
    const KernelSpec spec{0.6, 0.8, 1.7, -0.9};
    const Samples out = prabhakar_integral_num(one, spec);
    for (std::size_t j : {std::size_t{64}, std::size_t{300}, g.n - 1}) {
      const double t = g.t(j);
      const double expect =
          static_cast<double>(std::pow(t, spec.rho) * oracle::ml3_series_ld(0.6, 1.8, 1.7, -0.9 * std::pow(t, 0.6)));
      CHECK(out.values[j].real() == Approx(expect).epsilon(1e-11));
    }
  }
  SECTION("singular lead is integrated exactly") {
    Samples lead = Samples::constant(g, 0.0);
    lead.lead = sawi::SingularLead{2.0, 0.3};
    const Samples out = prabhakar_integral_num(lead, KernelSpec{1.0, 0.5, 0.0, 0.0});
    // 2 Gamma(0.7)/Gamma(1.2) t^{0.2}
    const double t = g.t(200);
    CHECK(out.values[200].real() == Approx(2.0 * std::tgamma(0.7) / std::tgamma(1.2) * std::pow(t, 0.2)).epsilon(1e-12));
    CHECK(throws_code(ErrorCode::InvalidArgument,
                      [&] { prabhakar_integral_num(lead, KernelSpec{1.0, 0.2, 0.0, 0.0}); }));
  }
  SECTION("errors") {
    CHECK(throws_code(ErrorCode::InvalidOrder, [&] { prabhakar_integral_num(one, KernelSpec{0.7, 0.0, 1.0, 0.0}); }));
    CHECK(throws_code(ErrorCode::InvalidOrder, [&] { prabhakar_integral_num(one, KernelSpec{0.0, 0.5, 1.0, 0.0}); }));
  }
}

TEST_CASE("derivative examples", "[prabhakar_ops]") {
  const Grid g = Grid::covering(1.0, 1.0 / 512);
  const Samples one = Samples::constant(g, 1.0);
  const Samples t1 = monomial(g, 1.0);

  CHECK(prabhakar_derivative_num(one, KernelSpec{0.7, 0.5, 0.0, 0.3}, 1).values.back().real() ==
        Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-3));
  const Samples classical = prabhakar_derivative_num(t1, KernelSpec{0.7, 1.0, 0.0, 0.3}, 1);
  for (const cplx& v : classical.values) CHECK(std::abs(v - 1.0) < 1e-11);
  const Samples sqrt_t = monomial(g, 0.5);
  CHECK(prabhakar_derivative_num(sqrt_t, KernelSpec{0.7, 0.5, 0.0, 0.0}, 1).values.back().real() ==
        Approx(std::tgamma(1.5)).epsilon(1e-3));

  const Samples reg_const = reg_prabhakar_derivative_num(Samples::constant(g, 4.0), KernelSpec{0.6, 0.7, 1.3, -0.5}, 1);
  for (const cplx& v : reg_const.values) CHECK(std::abs(v) < 1e-12);
  CHECK(reg_prabhakar_derivative_num(t1, KernelSpec{0.7, 0.5, 0.0, 0.0}, 1).values.back().real() ==
        Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-10));
  const KernelSpec generic{0.6, 0.7, 1.3, -0.5};
  const Samples reg_t = reg_prabhakar_derivative_num(t1, generic, 1);
  // f' = 1, so the result is t^{1-rho} E^{-gamma}_{alpha,2-rho}(omega t^alpha).
  const double expect = static_cast<double>(std::pow(1.0L, 0.3L) * oracle::ml3_series_ld(0.6, 1.3, -1.3, -0.5));
  CHECK(reg_t.values.back().real() == Approx(expect).epsilon(1e-10));

  CHECK(throws_code(ErrorCode::InvalidOrder, [&] { prabhakar_derivative_num(one, KernelSpec{0.7, 1.5, 0.0, 0.0}, 1); }));
  CHECK(throws_code(ErrorCode::GridTooCoarse,
                    [&] { prabhakar_derivative_num(Samples::constant(Grid{0.1, 3}, 1.0), KernelSpec{0.7, 1.5, 0.0, 0.0}, 2); }));
  CHECK(throws_code(ErrorCode::GridTooCoarse,
                    [&] { sawi::derivative_stencil(std::vector<cplx>(3, 1.0), 0.1, 2); }));
}

TEST_CASE("derivative stencils are exact on low-degree polynomials", "[prabhakar_ops]") {
  const double dt = 0.1;
  for (int k = 1; k <= 4; ++k) {
    // p(t) = t^{k+1}: interior stencils are exact up to degree k+1, one-sided ones too.
    std::vector<cplx> v(12);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::pow(j * dt, k + 1);
    const auto d = sawi::derivative_stencil(v, dt, k);
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double exact = std::tgamma(k + 2.0) * (j * dt);
      CHECK(std::abs(d[j] - exact) < 1e-8);
    }
  }
}

TEST_CASE("Hilfer-Prabhakar examples", "[prabhakar_ops]") {
  const Grid g = Grid::covering(1.0, 1.0 / 512);
  const KernelSpec spec{0.6, 0.7, 0.8, -0.4};

  SECTION("nu = 0 is the Prabhakar derivative") {
    const Samples f = Samples::from_function(g, [](double t) { return cplx{std::cos(t) + t * t}; });
    const Samples a = hilfer_prabhakar_num(f, HilferSpec{spec, 0.0});
    const Samples b = prabhakar_derivative_num(f, spec, 1);
    CHECK(a.values == b.values);
  }
  SECTION("nu = 1 matches the regularized derivative when f(0) = 0") {
    const Samples f = monomial(g, 2.0);
    const Samples a = hilfer_prabhakar_num(f, HilferSpec{spec, 1.0});
    const Samples b = reg_prabhakar_derivative_num(f, spec, 1);
    double gap = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) gap = std::max(gap, std::abs(a.values[j] - b.values[j]));
    CHECK(gap < 2.0 * g.dt);
  }
  SECTION("Hilfer derivative of a constant") {
    const Samples out = hilfer_prabhakar_num(Samples::constant(g, 1.0), HilferSpec{KernelSpec{0.6, 0.5, 0.0, 0.0}, 0.5});
    CHECK(out.values.back().real() == Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-3));
  }
  SECTION("regularized form ignores nu and kills constants") {
    const Samples f = Samples::from_function(g, [](double t) { return cplx{std::exp(-t), t}; });
    CHECK(reg_hilfer_prabhakar_num(f, HilferSpec{spec, 0.2}).values ==
          reg_hilfer_prabhakar_num(f, HilferSpec{spec, 0.9}).values);
    for (const cplx& v : reg_hilfer_prabhakar_num(Samples::constant(g, 2.5), HilferSpec{spec, 0.4}).values) {
      CHECK(std::abs(v) < 1e-12);
    }
    const Samples caputo = reg_hilfer_prabhakar_num(monomial(g, 1.0), HilferSpec{KernelSpec{0.6, 0.3, 0.0, 0.0}, 0.4});
    // One-sided second-order stencil at the last node: error ~ dt^2 |h'''| / 3, h = t^1.7 / Gamma(2.7).
    CHECK(caputo.values.back().real() == Approx(1.0 / std::tgamma(1.7)).epsilon(1e-6));
  }
  SECTION("errors") {
    const Samples f = Samples::constant(g, 1.0);
    CHECK(throws_code(ErrorCode::InvalidOrder, [&] { hilfer_prabhakar_num(f, HilferSpec{spec, 1.2}); }));
    CHECK(throws_code(ErrorCode::InvalidOrder, [&] { reg_hilfer_prabhakar_num(f, HilferSpec{KernelSpec{0.6, 1.3, 0.0, 0.0}, 0.5}); }));
  }
}

TEST_CASE("gamma = 0 reduces every operator to its fractional-calculus counterpart", "[prabhakar_ops]") {
  const Grid g = Grid::covering(1.0, 1.0 / 512);
  const double rho = 0.5, omega = 0.7;
  const KernelSpec spec{0.8, rho, 0.0, omega};
  const Samples t1 = monomial(g, 1.0), t2 = monomial(g, 2.0);
  // Away from the origin, where one-sided stencils meet the t^{1/2}-type behaviour of the outputs.
  const double t0 = 0.1;

  CHECK(max_rel_gap(prabhakar_integral_num(t1, spec), [&](double t) { return rl_monomial(1, rho, t); }, t0) < 1e-3);
  CHECK(max_rel_gap(prabhakar_derivative_num(t1, spec, 1), [&](double t) { return rl_monomial(1, -rho, t); }, t0) < 1e-3);
  CHECK(max_rel_gap(reg_prabhakar_derivative_num(t2, spec, 1), [&](double t) { return rl_monomial(2, -rho, t); }, t0) < 1e-3);
  CHECK(max_rel_gap(hilfer_prabhakar_num(t1, HilferSpec{spec, 0.5}), [&](double t) { return rl_monomial(1, -rho, t); }, t0) <
        1e-3);
  CHECK(max_rel_gap(reg_hilfer_prabhakar_num(t2, HilferSpec{spec, 0.5}), [&](double t) { return rl_monomial(2, -rho, t); }, t0) <
        1e-3);
}

TEST_CASE("halving dt shrinks the error by at least 1.8", "[prabhakar_ops]") {
  const double rho = 0.6;
  const KernelSpec spec{0.8, rho, 0.0, -0.5};
  using Op = std::function<Samples(const Samples&)>;
  const std::vector<std::pair<Op, double>> ops = {
      {[&](const Samples& f) { return prabhakar_integral_num(f, spec); }, rho},
      {[&](const Samples& f) { return prabhakar_derivative_num(f, spec, 1); }, -rho},
      {[&](const Samples& f) { return reg_prabhakar_derivative_num(f, spec, 1); }, -rho},
      {[&](const Samples& f) { return hilfer_prabhakar_num(f, HilferSpec{spec, 0.4}); }, -rho},
      {[&](const Samples& f) { return reg_hilfer_prabhakar_num(f, HilferSpec{spec, 0.4}); }, -rho},
  };
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& [op, q] = ops[i];
    double prev = 0.0;
    for (double dt : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
      const Grid g = Grid::covering(1.0, dt);
      const Samples out = op(monomial(g, 3.0));
      double err = 0.0;
      for (std::size_t j = 0; j < g.n; ++j) err = std::max(err, std::abs(out.values[j] - rl_monomial(3, q, g.t(j))));
      if (prev > 0.0) {
        INFO("operator " << i << " dt " << dt << " ratio " << prev / err);
        CHECK(prev / err >= 1.8);
      }
      prev = err;
    }
  }
}

TEST_CASE("transforms of numeric operators match the closed-form images", "[prabhakar_ops]") {
  // The grid reaches far enough that the dropped tail e^{-t/s} is below 1e-8 at s = 0.6.
  const Grid g = Grid::covering(12.0, 1.0 / 512);
  struct Case {
    double p;
    std::vector<cplx> derivs;
  };
  for (const Case& c : {Case{1.0, {0.0, 1.0}}, Case{2.0, {0.0, 0.0}}}) {
    const Samples f = monomial(g, c.p);
    for (double s : {0.3, 0.6}) {
      // Sa[t^p] = Gamma(p+1) s^{p-1}
      const cplx T = std::tgamma(c.p + 1.0) * std::pow(s, c.p - 1.0);
      for (double rho : {0.6, 1.4}) {
        // Order-1.4 derivatives of t are singular at the origin and exactly zero, respectively.
        if (rho > 1.0 && c.p < 2.0) continue;
        const KernelSpec spec{0.7, rho, 0.4, -0.3};
        const int m = static_cast<int>(std::ceil(rho));
        const HilferSpec hs{spec, 0.0};
        const sawi::InitialData zero{std::vector<cplx>(m, 0.0), std::nullopt};
        const sawi::InitialData exact{std::vector<cplx>(c.derivs.begin(), c.derivs.begin() + m), std::nullopt};
        INFO("p " << c.p << " s " << s << " rho " << rho);
        CHECK(rel(sawi_forward_samples(prabhakar_derivative_num(f, spec, m), s),
                  operator_image(sawi::OperatorKind::Prabhakar, T, hs, zero, m, s)) < 2e-3);
        CHECK(rel(sawi_forward_samples(reg_prabhakar_derivative_num(f, spec, m), s),
                  operator_image(sawi::OperatorKind::RegPrabhakar, T, hs, exact, m, s)) < 2e-3);
      }
      const HilferSpec hs{KernelSpec{0.7, 0.6, 0.4, -0.3}, 0.3};
      const sawi::InitialData weighted{{}, cplx{0.0}};
      const sawi::InitialData start{{0.0}, std::nullopt};
      INFO("p " << c.p << " s " << s);
      CHECK(rel(sawi_forward_samples(hilfer_prabhakar_num(f, hs), s),
                operator_image(sawi::OperatorKind::HilferPrabhakar, T, hs, weighted, 1, s)) < 2e-3);
      CHECK(rel(sawi_forward_samples(reg_hilfer_prabhakar_num(f, hs), s),
                operator_image(sawi::OperatorKind::RegHilferPrabhakar, T, hs, start, 1, s)) < 2e-3);
    }
  }
}

TEST_CASE("the integral is a left inverse of the regularized derivative", "[prabhakar_ops]") {
  const KernelSpec spec{0.7, 0.6, 0.5, -0.4};
  const auto f = [](double t) { return cplx{1.0 + std::sin(2.0 * t), t * t}; };
  for (double dt : {1.0 / 128, 1.0 / 256}) {
    const Grid g = Grid::covering(1.0, dt);
    const Samples fs = Samples::from_function(g, f);
    const Samples back = prabhakar_integral_num(reg_hilfer_prabhakar_num(fs, HilferSpec{spec, 0.5}), spec);
    double gap = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) gap = std::max(gap, std::abs(back.values[j] - (fs.values[j] - fs.values[0])));
    INFO("dt " << dt << " gap " << gap);
    CHECK(gap < 2.0 * dt);
  }
}

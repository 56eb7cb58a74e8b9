#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "sawi/analytic_solutions.hpp"
#include "sawi/error.hpp"
#include "test_util.hpp"

using Catch::Approx;
using sawi::cplx;
using sawi::ErrorCode;
using sawi::HilferSpec;
using sawi::InitialProfile;
using sawi::KernelSpec;
using sawi::ModeQuadrature;
using testutil::throws_code;

namespace {

constexpr double kPi = std::numbers::pi;

// Unit-mass Gaussian of variance v evaluated at x.
double gauss(double x, double v) { return std::exp(-0.5 * x * x / v) / std::sqrt(2.0 * kPi * v); }

void check_triple(const sawi::TimeTerm& term, double power, double beta, double gamma) {
  CHECK(term.power == Approx(power).margin(1e-14));
  CHECK(term.beta == Approx(beta).margin(1e-14));
  CHECK(term.gamma == Approx(gamma).margin(1e-14));
}

}  // namespace

TEST_CASE("classical limits of the Fourier solutions", "[analytic_solutions]") {
  const InitialProfile g = InitialProfile::gaussian(1.0);

  SECTION("advection-dispersion with unit orders is the heat kernel") {
    const sawi::AdvDispSpec spec{HilferSpec{KernelSpec{0.7, 1.0, 0.0, 0.3}, 0.5}, 0.0, 1.0, 2.0, true};
    const auto r = solve_adv_disp(spec, g, 0.0, 0.25);
    CHECK(r.value.real() == Approx(1.0 / std::sqrt(2.0 * kPi * 1.5)).epsilon(1e-9));
    CHECK_FALSE(r.truncation_warning);
  }
  SECTION("heat equation spreads the variance to sigma^2 + 2 N t") {
    const sawi::HeatSpec spec{HilferSpec{KernelSpec{0.7, 1.0, 0.0, 0.0}, 0.5}, 1.0, true};
    for (double x : {0.0, 0.8, -1.7}) {
      const auto r = solve_heat(spec, g, x, 0.5, 128);
      CHECK(r.value.real() == Approx(gauss(x, 2.0)).epsilon(1e-9));
      CHECK_FALSE(r.truncation_warning);
    }
    const auto profile = solve_heat_profile(spec, g, {-1.0, 0.0, 1.0}, 0.5);
    CHECK(profile.values[0].real() == Approx(gauss(1.0, 2.0)).epsilon(1e-9));
  }
  SECTION("advection shifts the profile") {
    // Symbol i p k moves the data to x = p t.
    const sawi::AdvDispSpec spec{HilferSpec{KernelSpec{0.7, 1.0, 0.0, 0.0}, 0.5}, 0.8, 0.0, 2.0, true};
    const auto r = solve_adv_disp(spec, g, 0.4, 0.5, 96);
    CHECK(std::abs(r.value - gauss(0.0, 1.0)) < 1e-9);
  }
}

TEST_CASE("regularized solutions start from the initial profile", "[analytic_solutions]") {
  const InitialProfile g = InitialProfile::gaussian(1.0);
  const HilferSpec hs{KernelSpec{0.8, 0.6, 0.5, -0.2}, 0.4};
  const sawi::AdvDispSpec adv{hs, 0.3, 0.7, 1.5, true};
  const sawi::HeatSpec heat{hs, 0.5, true};
  const ModeQuadrature mq{4.0, 2048};
  for (double x : {-1.0, 0.0, 1.0}) {
    CHECK(std::abs(solve_adv_disp(adv, g, x, 0.0, 64, mq).value - g.value(x)) < 1e-4);
    CHECK(std::abs(solve_heat(heat, g, x, 0.0).value - g.value(x)) < 1e-12);
    CHECK(std::abs(solve_adv_disp(adv, g, x, 1e-6, 128, mq).value - g.value(x)) < 1e-3);
    CHECK(std::abs(solve_heat(heat, g, x, 1e-6).value - g.value(x)) < 1e-3);
  }
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] {
    solve_heat(sawi::HeatSpec{hs, 0.5, false}, g, 0.0, 0.0);
  }));
}

TEST_CASE("series terms have the closed-form shapes", "[analytic_solutions]") {
  const double alpha = 0.8, rho = 0.6, gamma = 0.5, nu = 0.4, delta = 0.3;
  const HilferSpec hs{KernelSpec{alpha, rho, gamma, -0.2}, nu};
  const auto adv = adv_disp_template(sawi::AdvDispSpec{hs, 0.3, 0.7, 1.5, false}, 2);
  const auto adv_reg = adv_disp_template(sawi::AdvDispSpec{hs, 0.3, 0.7, 1.5, true}, 2);
  const auto heat_reg = heat_template(sawi::HeatSpec{hs, 1.0, true}, 2);
  const auto heat = heat_template(sawi::HeatSpec{hs, 1.0, false}, 2);
  const auto point = pointwise_template(sawi::PointwiseSpec{hs, 1.0, 0.2}, 2);
  const sawi::IntegroSpec integro{hs, 0.5, delta, 1.0, sawi::Samples::constant(sawi::Grid{0.1, 4}, 0.0)};
  const auto weighted = integro_template(integro, 2);
  const auto forcing = integro_forcing_kernels(integro, 2);
  REQUIRE(adv.terms.size() == 3);
  for (int n = 0; n <= 2; ++n) {
    INFO("n = " << n);
    const auto i = static_cast<std::size_t>(n);
    check_triple(adv.terms[i], nu * (1 - rho) + n * rho + rho - 1, nu * (1 - rho) + rho * (n + 1),
                 gamma * (1 + n) - gamma * nu);
    check_triple(adv_reg.terms[i], rho * n, rho * n + 1, gamma * n);
    check_triple(heat_reg.terms[i], rho * n, rho * n + 1, gamma * n);
    check_triple(heat.terms[i], rho * (n + 1) - nu * (rho - 1) - 1, rho * (n + 1) + nu * (1 - rho),
                 gamma * (n + 1 - nu));
    check_triple(point.terms[i], rho * n, rho * n + 1, gamma * n);
    CHECK(point.terms[i].omega == cplx{0.2});
    check_triple(weighted.terms[i], rho * (2 * n + 1) + nu * (1 - rho) - 1, nu * (1 - rho) + rho * (2 * n + 1),
                 delta * n + gamma * n + gamma - gamma * nu);
    CHECK(forcing[i].rho == Approx(rho * (2 * n + 1)).margin(1e-14));
    CHECK(forcing[i].gamma == Approx(gamma + n * (delta + gamma)).margin(1e-14));
    for (const auto* tpl : {&adv, &adv_reg, &heat_reg, &heat, &point, &weighted}) CHECK(tpl->terms[i].coef == cplx{1.0});
  }
  REQUIRE(adv.lead_exponent);
  CHECK(*adv.lead_exponent == Approx((1 - nu) * (1 - rho)));
  CHECK_FALSE(adv_reg.lead_exponent);
  // Exponents stay exact rationals through the expansion.
  CHECK(adv.atoms.atoms[2].mu.str() == "-1/25");
  CHECK(weighted.atoms.atoms[1].kappa.str() == "11/10");
}

TEST_CASE("weighted and regularized heat solutions agree at gamma = 0, nu = 1", "[analytic_solutions]") {
  const HilferSpec hs{KernelSpec{0.8, 0.6, 0.0, -0.3}, 1.0};
  const auto reg = heat_template(sawi::HeatSpec{hs, 0.7, true}, 40);
  const auto wtd = heat_template(sawi::HeatSpec{hs, 0.7, false}, 40);
  for (std::size_t n = 0; n < reg.terms.size(); ++n) {
    CHECK(std::abs(reg.terms[n].power - wtd.terms[n].power) < 1e-12);
    CHECK(std::abs(reg.terms[n].beta - wtd.terms[n].beta) < 1e-12);
    CHECK(std::abs(reg.terms[n].gamma - wtd.terms[n].gamma) < 1e-12);
  }
  const InitialProfile g = InitialProfile::gaussian(1.0);
  for (double x : {0.0, 1.3}) {
    const cplx a = solve_heat(sawi::HeatSpec{hs, 0.7, true}, g, x, 0.8).value;
    const cplx b = solve_heat(sawi::HeatSpec{hs, 0.7, false}, g, x, 0.8).value;
    CHECK(std::abs(a - b) < 1e-6);
  }
}

TEST_CASE("real data without advection gives real solutions", "[analytic_solutions]") {
  const InitialProfile g = InitialProfile::gaussian(0.7);
  const sawi::AdvDispSpec spec{HilferSpec{KernelSpec{0.8, 0.6, 0.5, -0.2}, 0.4}, 0.0, 0.7, 1.5, false};
  const auto r = solve_adv_disp_profile(spec, g, {-2.0, -0.3, 0.0, 1.1}, 0.7, 128, ModeQuadrature{4.0 / 0.7, 1024});
  for (const cplx& v : r.values) CHECK(std::abs(v.imag()) < 1e-10);
  sawi::AdvDispSpec moving = spec;
  moving.p = 0.5;
  const auto m = solve_adv_disp(moving, g, 0.4, 0.7, 128, ModeQuadrature{4.0 / 0.7, 1024});
  CHECK(std::abs(m.value.imag()) < 1e-10);
}

TEST_CASE("mode series overflow", "[analytic_solutions]") {
  const sawi::HeatSpec spec{HilferSpec{KernelSpec{0.8, 0.7, 0.5, -0.3}, 0.5}, 1.0, true};
  const auto tpl = sawi::heat_template(spec, 256);
  // z^n overflows past n ~ 200; terms that vanish at t = 0 must stay zero.
  const auto at_zero = sawi::mode_series(tpl, -36.0, 0.0);
  CHECK(at_zero.value == cplx{1.0, 0.0});
  CHECK(throws_code(ErrorCode::NonConvergence, [&] { sawi::mode_series(tpl, -36.0, 0.5); }));
}

TEST_CASE("truncation warnings", "[analytic_solutions]") {
  const InitialProfile g = InitialProfile::gaussian(1.0);
  const sawi::AdvDispSpec spec{HilferSpec{KernelSpec{0.8, 0.6, 0.5, -0.2}, 0.4}, 0.3, 0.7, 1.5, false};
  // Default modes reach |k| = 8, where the series in the symbol has not converged after 64 terms.
  const auto coarse = solve_adv_disp(spec, g, 0.5, 1.0);
  CHECK(coarse.truncation_warning);
  const auto fine = solve_adv_disp(spec, g, 0.5, 1.0, 128, ModeQuadrature{4.0, 2048});
  CHECK_FALSE(fine.truncation_warning);
  CHECK(fine.tail_ratio < 1e-9);
  CHECK(solve_pointwise(sawi::PointwiseSpec{HilferSpec{KernelSpec{0.8, 0.5, 0.0, 0.0}, 0.0}, 30.0, -1.0}, 2.0, 8)
            .truncation_warning);
}

TEST_CASE("pointwise relaxation examples", "[analytic_solutions]") {
  for (double t : {0.1, 1.0, 3.0}) {
    const auto r = solve_pointwise(sawi::PointwiseSpec{HilferSpec{KernelSpec{0.7, 0.6, 0.9, 0.4}, 0.3}, 2.0, 1.0}, t);
    CHECK(r.value == cplx{1.0});
  }
  const auto exp_decay = solve_pointwise(sawi::PointwiseSpec{HilferSpec{KernelSpec{0.8, 1.0, 0.0, 0.2}, 0.3}, 1.0, 0.0}, 1.0);
  CHECK(exp_decay.value.real() == Approx(std::exp(-1.0)).epsilon(1e-13));
  const auto half = solve_pointwise(sawi::PointwiseSpec{HilferSpec{KernelSpec{0.8, 0.5, 0.0, 0.2}, 0.3}, 1.0, 0.0}, 1.0);
  CHECK(half.value.real() == Approx(0.42758357615580700441).epsilon(1e-13));
  // Kernel argument carries -omega: gamma = 1, rho = 1 gives sum (-lambda t)^n E^{n}_{alpha,n+1}(-omega t^alpha).
  const sawi::PointwiseSpec generic{HilferSpec{KernelSpec{0.8, 0.6, 0.4, 0.2}, 0.3}, 1.0, 0.3};
  const auto tpl = pointwise_template(generic, 60);
  cplx expect = 0.0;
  for (int n = 0; n <= 60; ++n) {
    expect += std::pow(-0.7, n) * std::pow(1.2, 0.6 * n) *
              static_cast<double>(oracle::ml3_series_ld(0.8, 0.6 * n + 1, 0.4 * n, -0.2 * std::pow(1.2, 0.8)));
  }
  CHECK(std::abs(solve_pointwise(generic, 1.2, 60).value - expect) < 1e-12);
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] {
    solve_pointwise(sawi::PointwiseSpec{HilferSpec{KernelSpec{0.8, 0.6, 0.4, 0.2}, 0.3}, 1.0, 1.5}, 1.0);
  }));
}

TEST_CASE("integro-differential examples", "[analytic_solutions]") {
  const sawi::Grid grid = sawi::Grid::covering(1.0, 1.0 / 256);
  const double alpha = 0.7, rho = 0.4, nu = 0.5, gamma = 0.2;
  const HilferSpec hs{KernelSpec{alpha, rho, gamma, -0.1}, nu};

  SECTION("only the weighted datum") {
    const sawi::IntegroSpec spec{hs, 0.0, 0.3, 1.0, sawi::Samples::constant(grid, 0.0)};
    const double b = nu * (1 - rho) + rho;
    for (std::size_t j : {std::size_t{16}, grid.n - 1}) {
      const double t = grid.t(j);
      const double expect =
          std::pow(t, b - 1) * static_cast<double>(oracle::ml3_series_ld(alpha, b, gamma - gamma * nu, -0.1 * std::pow(t, alpha)));
      CHECK(solve_integro(spec, j).value.real() == Approx(expect).epsilon(1e-12));
    }
    const auto grid_result = solve_integro_grid(spec);
    REQUIRE(grid_result.solution.lead);
    CHECK(grid_result.solution.lead->exponent == Approx((1 - nu) * (1 - rho)));
    CHECK(grid_result.solution.lead->coef.real() == Approx(1.0 / std::tgamma(b)));
  }
  SECTION("only the forcing") {
    const HilferSpec plain{KernelSpec{alpha, rho, 0.0, -0.1}, nu};
    const sawi::IntegroSpec spec{plain, 0.0, 0.3, 0.0, sawi::Samples::constant(grid, 1.0)};
    CHECK(solve_integro(spec, grid.n - 1).value.real() == Approx(1.0 / std::tgamma(rho + 1.0)).epsilon(1e-12));
    CHECK_FALSE(solve_integro_grid(spec).solution.lead);
  }
  SECTION("errors") {
    const sawi::IntegroSpec spec{hs, 0.5, -0.3, 1.0, sawi::Samples::constant(grid, 1.0)};
    CHECK(throws_code(ErrorCode::InvalidArgument, [&] { solve_integro(spec, 3); }));
  }
}

TEST_CASE("argument validation", "[analytic_solutions]") {
  const InitialProfile g = InitialProfile::gaussian(1.0);
  const HilferSpec hs{KernelSpec{0.8, 0.6, 0.5, -0.2}, 0.4};
  CHECK(throws_code(ErrorCode::InvalidArgument,
                    [&] { solve_adv_disp(sawi::AdvDispSpec{hs, 0.0, 1.0, 2.5, true}, g, 0.0, 1.0); }));
  CHECK(throws_code(ErrorCode::InvalidArgument,
                    [&] { solve_adv_disp(sawi::AdvDispSpec{hs, 0.0, -1.0, 1.5, true}, g, 0.0, 1.0); }));
  CHECK(throws_code(ErrorCode::InvalidArgument,
                    [&] { solve_heat(sawi::HeatSpec{hs, 0.0, true}, g, 0.0, 1.0); }));
  CHECK(throws_code(ErrorCode::InvalidArgument,
                    [&] { solve_heat(sawi::HeatSpec{hs, 1.0, true}, InitialProfile::point_mass(), 0.0, 1.0); }));
  CHECK(throws_code(ErrorCode::InvalidArgument,
                    [&] { solve_heat(sawi::HeatSpec{hs, 1.0, true}, g, 0.0, 1.0, 64, ModeQuadrature{0.0, 63}); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { InitialProfile::gaussian(0.0); }));
  CHECK(throws_code(ErrorCode::InvalidOrder,
                    [&] { solve_heat(sawi::HeatSpec{HilferSpec{KernelSpec{0.8, 0.6, 0.5, -0.2}, 1.4}, 1.0, true}, g, 0.0, 1.0); }));
  // A point mass has no spectral decay; the series in the heat symbol cannot converge out to k = 12.
  CHECK(InitialProfile::point_mass().fourier_image(3.0) == cplx{1.0});
  const sawi::HeatSpec classical{HilferSpec{KernelSpec{1.0, 1.0, 0.0, 0.0}, 0.0}, 1.0, true};
  CHECK(solve_heat(classical, InitialProfile::point_mass(), 0.3, 1.0, 128, ModeQuadrature{12.0, 2048}).truncation_warning);
}

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "sawi/error.hpp"
#include "sawi/ml_kernels.hpp"

using Catch::Approx;
using sawi::cplx;
using sawi::ErrorCode;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const sawi::Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("pochhammer products", "[ml_kernels]") {
  CHECK(sawi::pochhammer(5.0, 0) == 1.0);
  CHECK(sawi::pochhammer(3.0, 2) == 12.0);
  CHECK(sawi::pochhammer(-2.0, 4) == 0.0);
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { sawi::pochhammer(1.0, -1); }));
}

TEST_CASE("rgamma handles poles and reflection", "[ml_kernels]") {
  CHECK(sawi::rgamma(0.0) == 0.0);
  CHECK(sawi::rgamma(-3.0) == 0.0);
  CHECK(sawi::rgamma(1.0) == Approx(1.0));
  CHECK(sawi::rgamma(0.5) == Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(sawi::rgamma(200.5) == Approx(std::exp(-std::lgamma(200.5))).epsilon(1e-13));
  // Gamma(-2.5) = -8 sqrt(pi) / 15.
  CHECK(sawi::rgamma(-2.5) == Approx(-15.0 / (8.0 * std::sqrt(M_PI))).epsilon(1e-14));
}

TEST_CASE("ml3 closed-form special cases", "[ml_kernels]") {
  CHECK(sawi::ml3(1, 1, 1, 1.0).value.real() == Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(sawi::ml3(2, 2, 1, 1.0).value.real() == Approx(std::sinh(1.0)).epsilon(1e-15));
  const auto r = sawi::ml3(0.7, 1, 0, -4.0);
  CHECK(r.value.real() == 1.0);
  CHECK(r.value.imag() == 0.0);
}

TEST_CASE("ml3 matches frozen extended-precision goldens", "[ml_kernels]") {
  // 200-term series in 40-digit arithmetic.
  const double golden = 2.000628706801171918;
  const auto r = sawi::ml3(0.5, 1.5, 2, 0.3);
  CHECK(r.value.real() == Approx(golden).epsilon(1e-14));
  CHECK(r.est_error <= 1e-15 * std::abs(r.value));
  CHECK(r.terms_used >= 1);
  // The in-test long-double series agrees with the frozen value.
  CHECK(static_cast<double>(oracle::ml3_series_ld(0.5, 1.5, 2, 0.3)) == Approx(golden).epsilon(1e-15));

  CHECK(sawi::ml1(0.5, -1.0).value.real() == Approx(0.42758357615580700441).epsilon(1e-14));
}

TEST_CASE("ml3 reduction chain on a z grid", "[ml_kernels]") {
  for (double z : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    CAPTURE(z);
    for (double alpha : {0.5, 0.9, 1.7}) {
      for (double rho : {0.4, 1.0, 2.3}) {
        const cplx three = sawi::ml3(alpha, rho, 1.0, z).value;
        const cplx two = sawi::ml2(alpha, rho, z).value;
        CHECK(std::abs(three - two) <= 1e-12 * std::max(1.0, std::abs(two)));
        const long double ref = oracle::ml3_series_ld(alpha, rho, 1.0, z);
        CHECK(std::abs(two.real() - static_cast<double>(ref)) <= 1e-12 * std::max(1.0, std::abs(two)));
      }
      const cplx one = sawi::ml1(alpha, z).value;
      const cplx three = sawi::ml3(alpha, 1.0, 1.0, z).value;
      CHECK(std::abs(one - three) <= 1e-12 * std::max(1.0, std::abs(one)));
    }
  }
}

TEST_CASE("ml3 at zero argument is 1/Gamma(rho)", "[ml_kernels]") {
  for (double rho : {0.3, 1.0, 2.5, -0.5}) {
    for (double gamma : {-1.5, 0.0, 0.7, 3.0}) {
      CHECK(sawi::ml3(0.8, rho, gamma, 0.0).value.real() == Approx(1.0 / std::tgamma(rho)).epsilon(1e-15));
    }
  }
}

TEST_CASE("ml3 partial sums are monotone for nonnegative data", "[ml_kernels]") {
  const auto sums = sawi::ml3_partial_sums(0.6, 0.9, 1.4, 3.0);
  REQUIRE(sums.size() > 3);
  for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i].real() >= sums[i - 1].real());
  CHECK(sums.back().real() == Approx(sawi::ml3(0.6, 0.9, 1.4, 3.0).value.real()).epsilon(1e-15));
}

TEST_CASE("ml3 complex argument against the long-double oracle", "[ml_kernels]") {
  const cplx z{-1.2, 0.8};
  const cplx v = sawi::ml3(0.75, 1.3, 0.6, z).value;
  const auto ref = oracle::ml3_series_ld_complex(0.75, 1.3, 0.6, z);
  CHECK(std::abs(v - cplx(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) <= 1e-13);
}

TEST_CASE("ml3 error reporting", "[ml_kernels]") {
  CHECK(throws_code(ErrorCode::InvalidOrder, [] { sawi::ml3(0.0, 1, 1, 1.0); }));
  CHECK(throws_code(ErrorCode::InvalidOrder, [] { sawi::ml3(-1.0, 1, 1, 1.0); }));
  CHECK(throws_code(ErrorCode::OutOfSupportedRange, [] { sawi::ml3(1, 1, 1, 51.0); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { sawi::ml3(1, 1, 1, 1.0, 0.0); }));
  // A tiny alpha makes the terms decay too slowly for the term cap.
  CHECK(throws_code(ErrorCode::NonConvergence, [] { sawi::ml3(0.001, 1, 1, 0.9999); }));
}

TEST_CASE("prabhakar_kernel values", "[ml_kernels]") {
  CHECK(sawi::prabhakar_kernel({1, 1, 1, 0.0}, 7.3).real() == Approx(1.0));
  CHECK(sawi::prabhakar_kernel({1, 2, 1, -1.0}, 1.0).real() == Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  // 40-digit series oracle.
  CHECK(sawi::prabhakar_kernel({0.5, 0.5, 1, 1.0}, 1.0).real() ==
        Approx(5.5731696643100397533).epsilon(1e-14));
  CHECK(throws_code(ErrorCode::InvalidOrder, [] { sawi::prabhakar_kernel({1, 0.0, 1, 0.0}, 1.0); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { sawi::prabhakar_kernel({1, 1, 1, 0.0}, 0.0); }));
}

TEST_CASE("kernel_antiderivative values", "[ml_kernels]") {
  CHECK(sawi::kernel_antiderivative({1, 1, 0, 3.0}, 2.0).real() == Approx(2.0));
  CHECK(sawi::kernel_antiderivative({1, 1, 1, 1.0}, 1.0).real() == Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  // Adaptive quadrature of the kernel (40 digits); matches the in-test tanh-sinh oracle below.
  const sawi::KernelSpec spec{0.6, 0.8, 2, -0.5};
  const double golden = 0.38690216189964751461;
  CHECK(sawi::kernel_antiderivative(spec, 0.5).real() == Approx(golden).epsilon(1e-13));
  CHECK(oracle::integrate_kernel(spec, 0.5) == Approx(golden).epsilon(1e-10));
}

TEST_CASE("kernel_antiderivative differentiates back to the kernel", "[ml_kernels]") {
  const sawi::KernelSpec specs[] = {{0.6, 0.8, 2, -0.5}, {1.3, 1.7, 0.4, 0.9}, {0.9, 0.5, -0.6, 0.3}};
  for (const auto& spec : specs) {
    for (double t : {0.25, 1.0, 4.0}) {
      const double h = 1e-5 * t;
      const cplx d = (sawi::kernel_antiderivative(spec, t + h) - sawi::kernel_antiderivative(spec, t - h)) / (2 * h);
      const cplx k = sawi::prabhakar_kernel(spec, t);
      CHECK(std::abs(d - k) <= 1e-6 * std::abs(k));
    }
  }
}

TEST_CASE("kernel_primitive accepts rho = 0", "[ml_kernels]") {
  // rho = 0, gamma = 0: the first primitive is the unit step.
  CHECK(sawi::kernel_primitive({0.7, 0.0, 0.0, 0.4}, 0.3, 1).real() == Approx(1.0));
  CHECK(sawi::kernel_primitive({0.7, 0.0, 0.0, 0.4}, 0.0, 1) == cplx{0.0, 0.0});
  CHECK(sawi::kernel_primitive({1, 1, 0, 0.0}, 2.0, 2).real() == Approx(2.0));
}

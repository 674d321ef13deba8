#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wdiv/arith.hpp"

using namespace wdiv;

TEST_CASE("psi_frac examples") {
  CHECK(psi_frac(0.5) == 0.0);
  CHECK(psi_frac(1.25) == -0.25);
  CHECK(psi_frac(3.0) == -0.5);
  CHECK(psi_frac(-0.25) == doctest::Approx(0.25));
  CHECK_THROWS_AS(psi_frac(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(psi_frac(INFINITY), std::invalid_argument);
}

TEST_CASE("psi_frac is 1-periodic and lies in [-1/2, 1/2)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1e4, 1e4);
  for (int i = 0; i < 10000; ++i) {
    const double t = dist(rng);
    const double v = psi_frac(t);
    CHECK(std::abs(psi_frac(t + 1.0) - v) <= 1e-12);
    CHECK(v >= -0.5);
    CHECK(v < 0.5);
  }
}

TEST_CASE("digamma at rationals matches the series oracle") {
  // Frozen from oracle::digamma_series and the closed forms -gamma, -gamma - 2 log 2.
  CHECK(digamma_rational(1, 1) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
  CHECK(digamma_rational(1, 2) == doctest::Approx(-1.96351002602142347).epsilon(1e-14));
  // p/q = 1 regardless of representation.
  CHECK(digamma_rational(2, 2) == doctest::Approx(-0.57721566490153286).epsilon(1e-14));
  CHECK(digamma_rational(1, 3) == doctest::Approx(-3.13203378002080632).epsilon(1e-13));

  for (i64 q = 1; q <= 12; ++q) {
    for (i64 p = 1; p <= q; ++p) {
      const double ref = static_cast<double>(oracle::digamma_series(static_cast<long double>(p) / q));
      CHECK(std::abs(digamma_rational(p, q) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
  CHECK_THROWS_AS(digamma_rational(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(digamma_rational(4, 3), std::invalid_argument);
}

TEST_CASE("digamma reflection psi(1-x) - psi(x) = pi cot(pi x)") {
  for (i64 q = 2; q <= 12; ++q) {
    for (i64 p = 1; p < q; ++p) {
      if (gcd(p, q) != 1) continue;
      const double x = static_cast<double>(p) / static_cast<double>(q);
      const double lhs = digamma_rational(q - p, q) - digamma_rational(p, q);
      CHECK(std::abs(lhs - kPi / std::tan(kPi * x)) <= 1e-10);
    }
  }
}

TEST_CASE("squarefree kernel") {
  CHECK(squarefree_kernel(12) == SqrtKernel{2, 3});
  CHECK(squarefree_kernel(1) == SqrtKernel{1, 1});
  CHECK(squarefree_kernel(50) == SqrtKernel{5, 2});
  CHECK(squarefree_kernel(1'000'000'007LL * 9) == SqrtKernel{3, 1'000'000'007LL});
  CHECK_THROWS_AS(squarefree_kernel(0), std::invalid_argument);

  for (i64 n = 1; n <= 1'000'000; ++n) {
    const SqrtKernel k = squarefree_kernel(n);
    REQUIRE(k.multiplier * k.multiplier * k.kernel == n);
    if (n % 997 == 0) {
      for (i64 p = 2; p * p <= k.kernel; ++p) REQUIRE(k.kernel % (p * p) != 0);
    }
  }
}

TEST_CASE("divisor count") {
  CHECK(divisor_count(1) == 1);
  CHECK(divisor_count(12) == 6);
  CHECK(divisor_count(16) == 5);
  CHECK_THROWS_AS(divisor_count(0), std::invalid_argument);
  for (i64 n = 1; n <= 100000; n += (n < 3000 ? 1 : 37)) REQUIRE(divisor_count(n) == oracle::brute_divisor_count(n));
}

TEST_CASE("domain type invariants") {
  CHECK_NOTHROW(RationalPhase(1, 1));
  CHECK_NOTHROW(RationalPhase(2, 5));
  CHECK_THROWS_AS(RationalPhase(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(RationalPhase(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(RationalPhase(4, 3), std::invalid_argument);
  CHECK_NOTHROW(CongruenceSpec(3, 3, 1, 1));
  CHECK_THROWS_AS(CongruenceSpec(0, 3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(CongruenceSpec(1, 0, 1, 1), std::invalid_argument);
  CHECK(std::abs(EulerConstants{}.gamma - 0.5772156649015329) < 1e-15);
}

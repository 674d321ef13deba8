#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "wdiv/constants.hpp"
#include "wdiv/moments.hpp"

using namespace wdiv;

namespace {
const PhasePair kPhases{RationalPhase(1, 2), RationalPhase(1, 3)};
const CongruenceSpec kSpec{1, 2, 1, 3};

// Midpoint rule on a grid whose cell edges include every jump x = m/6,
// so the only error is rounding.
double riemann_first_moment(double T, int cells_per_unit) {
  const int n = static_cast<int>((T - 1.0) * cells_per_unit);
  const double h = (T - 1.0) / n;
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i) {
    const double x = 1.0 + (i + 0.5) * h;
    acc += oracle::weighted_sum(6.0 * x, 1, 2, 1, 3);
  }
  return static_cast<double>(acc * h);
}
}  // namespace

TEST_CASE("exact step integration") {
  CHECK(integrate_weighted_power(1.0, 1, kPhases) == 0.0);

  const StepSeries s = weighted_sum_steps(12, kPhases);
  double manual = 0.0;
  for (i64 m = 6; m <= 11; ++m) manual += s.on_interval(m);
  manual /= 6.0;
  const double exact = integrate_weighted_power(2.0, 1, kPhases);
  CHECK(exact == doctest::Approx(manual).epsilon(1e-12));
  CHECK(std::abs(exact - riemann_first_moment(2.0, 120000)) <= 1e-6);

  const double t20 = integrate_weighted_power(20.0, 1, kPhases);
  CHECK(std::abs(t20 - riemann_first_moment(20.0, 1200)) <= 1e-5);

  // Fractional end point: prorated last interval.
  const StepSeries big = weighted_sum_steps(200, kPhases);
  const double a = integrate_steps_power(big, 1.0, 7.3, 1);
  double ref = 0.0;
  for (i64 m = 6; m < 43; ++m) ref += big.on_interval(m);
  ref += big.on_interval(43) * (43.8 - 43.0);
  CHECK(a == doctest::Approx(ref / 6.0).epsilon(1e-12));

  for (double T : {3.0, 17.5, 100.0})
    for (int k : {2, 4}) CHECK(integrate_weighted_power(T, k, kPhases) >= 0.0);
}

TEST_CASE("error power integral") {
  CHECK(integrate_error_abs_power(37.5, 0.0, kSpec) == 36.5);
  const double i5 = integrate_error_abs_power(5000.0, 2.0, kSpec);
  const double i10 = integrate_error_abs_power(10000.0, 2.0, kSpec);
  MESSAGE("int |Delta|^2 doubling ratio: " << i10 / i5);
  CHECK(i10 / i5 == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.2));

  for (double A : {1.0, 2.0, 3.5}) {
    const double o4 = integrate_error_abs_power(500.0, A, kSpec, 4);
    const double o8 = integrate_error_abs_power(500.0, A, kSpec, 8);
    CHECK(std::abs(o4 - o8) <= 1e-8 * std::abs(o8));
  }
  CHECK_THROWS_AS(integrate_error_abs_power(10.0, -1.0, kSpec), std::invalid_argument);
  CHECK_THROWS_AS(integrate_error_abs_power(10.0, 2.0, kSpec, 7), std::invalid_argument);
}

TEST_CASE("moment main terms and reports") {
  const double Q = 6.0;
  CHECK(moment_main_term(4.0, 2, 6, 1.0) == doctest::Approx(Q * Q / (64.0 * kPi * kPi) * (8.0 - 1.0) / 1.5));
  const double norm3 = std::pow(2.0, 9.5) * kPi * kPi * kPi;
  CHECK(moment_main_term(16.0, 3, 6, 1.0) ==
        doctest::Approx(Q * Q * Q / norm3 * (std::pow(16.0, 1.75) - 1.0) / 1.75));
  CHECK_THROWS_AS(moment_main_term(4.0, 1, 6, 1.0), std::invalid_argument);

  const MomentReport r1 = moment_report(300.0, 1, kPhases, 100);
  CHECK(r1.main_term == 0.0);
  CHECK(r1.ratio == doctest::Approx(std::abs(r1.empirical) / (6.0 * std::pow(300.0, 0.75))));

  const MomentReport r2 = moment_report(2000.0, 2, kPhases, 10000);
  CHECK(r2.B_used == doctest::Approx(mean_square_constant(kPhases, 10000).value));
  CHECK(r2.ratio == doctest::Approx(r2.empirical / r2.main_term));
  CHECK(r2.ratio > 0.5);
  CHECK(r2.ratio < 1.5);
  CHECK_THROWS_AS(moment_report(10.0, 5, kPhases, 10), std::invalid_argument);
}

TEST_CASE("large-value census") {
  const ErrorGrid grid = ErrorGrid::build(5000.0, kSpec);
  const double top = grid.max_abs();
  CHECK(large_value_census(grid, top * 1.001, top * 1.001).M == 0);
  i64 prev = -1;
  for (double V = 0.5; V < top; V *= 1.2) {
    const CensusReport r = large_value_census(grid, V, 2.0 * V);
    if (prev >= 0) CHECK(r.M <= prev);
    prev = r.M;
    for (size_t i = 1; i < r.points.size(); ++i) REQUIRE(r.points[i] - r.points[i - 1] >= r.spacing);
    for (double x : r.points) {
      REQUIRE(x >= 2500.0);
      REQUIRE(x <= 5000.0);
    }
  }
  CHECK_THROWS_AS(large_value_census(grid, 2.0, 1.0), std::invalid_argument);
  CHECK(large_value_census(5000.0, 1.0, 1.0, kSpec).M == large_value_census(grid, 1.0, 1.0).M);
}

TEST_CASE("growth fit") {
  std::vector<std::pair<double, double>> pts;
  for (int j = 10; j <= 17; ++j) {
    const double T = std::ldexp(1.0, j);
    pts.emplace_back(T, 3.7 * std::pow(T, 1.5));
  }
  const GrowthFit fit = fit_growth_exponent(pts);
  CHECK(std::abs(fit.exponent - 1.5) <= 1e-12);
  CHECK(fit.intercept == doctest::Approx(std::log(3.7)));
  CHECK(fit.max_residual < 1e-12);
  pts[3].second = -1.0;
  CHECK_THROWS_AS(fit_growth_exponent(pts), std::invalid_argument);
  CHECK_THROWS_AS(fit_growth_exponent(std::span(pts).first(2)), std::invalid_argument);
}

TEST_CASE("oscillatory integrals") {
  // int_2^10 cos(5 sqrt t) dt = [2 u sin(5u)/5 + 2 cos(5u)/25] from sqrt 2 to sqrt 10.
  auto F = [](double u) { return 2.0 * u * std::sin(5.0 * u) / 5.0 + 2.0 * std::cos(5.0 * u) / 25.0; };
  const OscillatoryCheck c = oscillatory_integral(2.0, 10.0, 5.0, 0.0);
  CHECK(c.value == doctest::Approx(F(std::sqrt(10.0)) - F(std::sqrt(2.0))).epsilon(1e-12));
  CHECK(c.bound == doctest::Approx(2.0 * (std::sqrt(10.0) + std::sqrt(2.0)) / 5.0 / 2.0));
  CHECK(std::abs(c.value) <= 2.0 * c.bound);
  MESSAGE("slack at A=5: " << c.slack);

  double prev = 1e300;
  for (double A : {10.0, 100.0, 1000.0}) {
    const double v = std::abs(oscillatory_integral(2.0, 10.0, A, 0.3).value);
    CHECK(v < prev);
    prev = v;
  }
  for (double T : {100.0, 1000.0, 10000.0}) {
    const OscillatoryCheck k2 = oscillatory_integral(T / 2, T, 7.0, 1.0, 2.0);
    CHECK(std::abs(k2.value) <= 4.0 * std::pow(T, 1.0) / 7.0);
  }
  CHECK_THROWS_AS(oscillatory_integral(2.0, 10.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("spike diagnostic moment grows at most linearly") {
  std::vector<std::pair<double, double>> pts;
  for (int j = 8; j <= 12; ++j) {
    const double T = std::ldexp(1.0, j);
    pts.emplace_back(T, integrate_spike_diagnostic(T, std::sqrt(T), kPhases, 400));
  }
  const GrowthFit fit = fit_growth_exponent(pts);
  MESSAGE("spike diagnostic slope: " << fit.exponent);
  CHECK(fit.exponent <= 1.2);
}

TEST_CASE("voronoi residual shrinks with the head length") {
  const StepSeries s = weighted_sum_steps(steps_needed(300.0, 6), kPhases);
  const ResidualReport a = voronoi_residual(s, 300.0, 10.0, kPhases);
  const ResidualReport b = voronoi_residual(s, 300.0, 100.0, kPhases);
  MESSAGE("residual ratios: " << a.ratio << " " << b.ratio);
  CHECK(a.total == doctest::Approx(integrate_weighted_power(s, 300.0, 2)).epsilon(1e-10));
  CHECK(b.ratio < a.ratio);
  CHECK(a.ratio < 1.0);
}

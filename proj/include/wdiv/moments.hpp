#pragma once

// Desk-scale verification engine: exact step integration of S^k, quadrature
// of |Delta|^A, main-term comparison, large-value census, growth fits.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wdiv/arith.hpp"
#include "wdiv/congruence.hpp"
#include "wdiv/weighted_sum.hpp"

namespace wdiv {

struct MomentReport {
  double T = 0.0;
  double order = 0.0;
  double empirical = 0.0;
  double main_term = 0.0;  // 0 when there is no main term (k = 1)
  double ratio = 0.0;      // empirical / main_term, or the mean-value bound ratio for k = 1
  double B_used = 0.0;
  std::string notes;
};

struct CensusReport {
  double V = 0.0;
  double spacing = 0.0;
  i64 M = 0;
  std::vector<double> points;  // selected x values
};

struct GrowthFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double max_residual = 0.0;
};

struct OscillatoryCheck {
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // |value| / bound
};

/// Smallest step count covering t = q1 q2 x up to q1 q2 T.
i64 steps_needed(double T, i64 modulus_product);

/// Exact integral over [a, b] (in x) of f(q1 q2 x)^k for a step series f.
double integrate_steps_power(const StepSeries& series, double a, double b, int k);

/// int_1^T S^k(q1 q2 x) dx, exact up to rounding; the range is summed as
/// dyadic blocks [T/2^{j+1}, T/2^j].
double integrate_weighted_power(double T, int k, const PhasePair& phases);
double integrate_weighted_power(const StepSeries& series, double T, int k);

/// int_1^T |Delta(q1 q2 x; spec)|^A dx; Gauss-Legendre of the given order per
/// unit t-interval, split where Delta changes sign.
double integrate_error_abs_power(double T, double A, const CongruenceSpec& spec, int order = 4);

/// Main term of int_1^T S^k: (q1q2)^2/(2^6 pi^2) B int x^{1/2} for k = 2 and
/// (q1q2)^k/(2^{7k/2-1} pi^k) B int x^{k/4} for k >= 3.
double moment_main_term(double T, int k, i64 modulus_product, double B);

/// k = 1 reports |int S| / (q1 q2 T^{3/4}); k = 2..4 compare with the main term
/// using the constant truncated at y_for_B.
MomentReport moment_report(double T, int k, const PhasePair& phases, i64 y_for_B);
MomentReport moment_report(const StepSeries& series, double T, int k, const PhasePair& phases,
                           double B);

/// |Delta(t)| sampled at t = m + 1/2 covering [q1q2 T/2, q1q2 T].
struct ErrorGrid {
  std::vector<double> x;
  std::vector<double> abs_delta;

  static ErrorGrid build(double T, const CongruenceSpec& spec);
  double max_abs() const;
};

/// Greedy left-to-right selection of grid points with |Delta| >= V and
/// pairwise separation >= spacing (in x).
CensusReport large_value_census(const ErrorGrid& grid, double V, double spacing);
CensusReport large_value_census(double T, double V, double spacing, const CongruenceSpec& spec);

/// Least-squares slope of log(value) against log(T).
GrowthFit fit_growth_exponent(std::span<const std::pair<double, double>> samples);

/// int_a^b t^{k/4} cos(A sqrt(t) + B) dt against b^{k/4} (sqrt(b) + sqrt(a)) / |A|.
OscillatoryCheck oscillatory_integral(double a, double b, double A, double B, double k = 0.0);

/// Midpoint-rule integral over [T/2, T] of the two spike diagnostics.
double integrate_spike_diagnostic(double T, double H, const PhasePair& phases, i64 samples);

/// int_1^T (S(q1q2 x) - R0(x; y))^2 dx / int_1^T S^2(q1q2 x) dx.
struct ResidualReport {
  double y = 0.0;
  double residual = 0.0;
  double total = 0.0;
  double ratio = 0.0;
};
ResidualReport voronoi_residual(const StepSeries& series, double T, double y, const PhasePair& phases);

}  // namespace wdiv

#pragma once

// The weighted divisor sum
//   S(t; a1/q1, a2/q2) = sum'_{mn <= t} cos(2 pi m a1/q1) sin(2 pi n a2/q2)
// evaluated directly, through the congruence error terms, and incrementally
// over unit intervals of t.

#include <vector>

#include "wdiv/arith.hpp"

namespace wdiv {

/// theta1 weights the cosine factor, theta2 the sine factor.
struct PhasePair {
  RationalPhase theta1;
  RationalPhase theta2;

  i64 modulus_product() const { return theta1.q() * theta2.q(); }
};

/// Exact values of a piecewise-constant summatory function:
/// values[j] is the value on the open interval (t_min + j, t_min + j + 1).
struct StepSeries {
  i64 modulus = 1;  // q1 q2; the moment integrals use t = q1 q2 x
  i64 t_min = 0;
  std::vector<double> values;

  i64 t_end() const { return t_min + static_cast<i64>(values.size()); }
  double on_interval(i64 m) const { return values.at(static_cast<size_t>(m - t_min)); }
  /// Value at real t; integral t gets the half-weight (average) convention.
  double at(double t) const;
};

inline constexpr i64 kDefaultStepBudget = 100'000'000;

/// cos(2 pi m a/q) for m = 0..q-1 (index by m mod q).
std::vector<double> cos_table(const RationalPhase& phase);
std::vector<double> sin_table(const RationalPhase& phase);

/// Direct double sum, O(t log t); boundary pairs mn = t at half weight.
double weighted_sum_direct(double t, const PhasePair& phases);

/// sum_{r1,r2} cos(2 pi r1 a1/q1) sin(2 pi r2 a2/q2) Delta(q1 q2 x; r1,q1,r2,q2).
double weighted_sum_via_error_terms(double x, const PhasePair& phases);

/// The four lines obtained by substituting the congruence asymptotic into
/// the residue decomposition of S(q1 q2 x). The three main-term lines each
/// carry a full-period trigonometric factor and vanish.
struct ErrorTermExpansion {
  double log_line = 0.0;        // (x log x - x) * sum cos * sum sin
  double digamma_line_1 = 0.0;  // -x sum cos * psi(r1/q1) * sum sin
  double digamma_line_2 = 0.0;  // -x sum sin * psi(r2/q2) * sum cos
  double error_line = 0.0;      // sum cos sin Delta

  double total() const { return log_line + digamma_line_1 + digamma_line_2 + error_line; }
};
ErrorTermExpansion weighted_sum_expansion(double x, const PhasePair& phases);

/// Values on (m, m+1) for m = 0..n_max-1, built by adding
/// sum_{mn = t} cos sin at each integer crossing. O(n_max log n_max).
StepSeries weighted_sum_steps(i64 n_max, const PhasePair& phases,
                              i64 budget = kDefaultStepBudget);

enum class TrigKind { sin, cos };

/// sum_{r=1}^{q} sin|cos(2 pi r a/q + theta); zero for gcd(a, q) = 1, q >= 2.
double full_period_trig_sum(i64 a, i64 q, double theta, TrigKind kind);

}  // namespace wdiv

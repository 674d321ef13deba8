#pragma once

// The divisor problem with congruence conditions: d(n; r1,q1,r2,q2), its
// summatory function under the half-weight boundary convention, the smooth
// main term and the error term.

#include <vector>

#include "wdiv/arith.hpp"

namespace wdiv {

/// Count with half-integer weights, stored doubled so sums stay exact.
struct WeightedCount {
  i64 twice = 0;

  double value() const { return 0.5 * static_cast<double>(twice); }
  friend bool operator==(const WeightedCount&, const WeightedCount&) = default;
};

struct DeltaSample {
  double x = 0.0;
  WeightedCount count;
  double main = 0.0;
  double delta = 0.0;  // count.value() - main
};

enum class CountMode { brute, hyperbola };

/// Whether main_term accepts 1 <= x < q1 q2 (outside the classical range).
enum class RangePolicy { strict, allow_below_modulus };

/// Ordered pairs (n1, n2), n1 n2 = n, n_i = r_i (mod q_i).
i64 congruence_divisor_count(i64 n, const CongruenceSpec& spec);

/// Sum over n1 n2 <= x with the congruence conditions; pairs on n1 n2 = x
/// (x integral) carry weight 1/2. Both modes return identical results.
WeightedCount congruence_summatory(double x, const CongruenceSpec& spec,
                                   CountMode mode = CountMode::hyperbola);

/// u log u - (psi(r1/q1) + psi(r2/q2) + 1) u with u = x / (q1 q2).
double congruence_main_term(double x, const CongruenceSpec& spec,
                            RangePolicy policy = RangePolicy::strict);

DeltaSample congruence_error(double x, const CongruenceSpec& spec);

/// -sum_{n1 <= q1 sqrt(x), n1 = r1} psi(q1 x/n1 - r2/q2)
/// -sum_{n2 <= q2 sqrt(x), n2 = r2} psi(q2 x/n2 - r1/q1).
/// Tracks congruence_error(q1 q2 x) up to a bounded remainder.
double congruence_error_psi_form(double x, const CongruenceSpec& spec);

/// counts[m] = number of admissible pairs with n1 n2 <= m, for m = 0..n_max.
/// This is the summatory function on the open interval (m, m+1).
std::vector<i64> congruence_step_counts(i64 n_max, const CongruenceSpec& spec);

i64 isqrt(i64 n);

}  // namespace wdiv

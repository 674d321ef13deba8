#pragma once

// Square-root relations sqrt(n1)+...+sqrt(n_v) = sqrt(n_{v+1})+...+sqrt(n_k),
// their weighted partial sums, the moment constants B_k, and the exponent
// bookkeeping s(k), K0.

#include <boost/rational.hpp>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "wdiv/arith.hpp"
#include "wdiv/weighted_sum.hpp"

namespace wdiv {

using Rational = boost::rational<i64>;

/// A vector i in {0,1}^{k-1}; bit j flips the sign of sqrt(n_{j+2}).
struct SignPattern {
  std::vector<int> bits;

  int k() const { return static_cast<int>(bits.size()) + 1; }
  int weight() const;
  /// (k - 2|i|) 3pi/4
  double beta() const;

  static std::vector<SignPattern> all(int k);
};

struct SqrtRelation {
  std::vector<i64> terms;
  int split = 1;  // terms[0..split) on the left
};

/// Sorted (squarefree kernel, summed multiplier) pairs of sum sqrt(n_i).
using KernelSignature = std::vector<std::pair<i64, i64>>;
KernelSignature side_signature(std::span<const i64> terms);

/// Exact decision via linear independence of square roots of distinct
/// squarefree integers.
bool is_sqrt_relation(std::span<const i64> terms, int split);

/// Exact test of alpha(n; i) = 0.
bool alpha_vanishes(std::span<const i64> terms, const SignPattern& pattern);

inline constexpr double kDefaultEnumerationBudget = 5.0e8;

/// Calls visit(tuple) for every ordered tuple in [1, y]^k that satisfies the
/// relation with the given split. Work is O(y^{min(v, k-v)}) plus output size.
void for_each_sqrt_relation(int k, int split, i64 y,
                            const std::function<void(std::span<const i64>)>& visit,
                            double budget = kDefaultEnumerationBudget);

/// All relations with entries <= y, sorted lexicographically.
std::vector<SqrtRelation> enumerate_sqrt_relations(int k, int split, i64 y,
                                                   double budget = kDefaultEnumerationBudget);

/// sum over relations in [1, y]^k of prod f(n_i) / (prod n_i)^{3/4};
/// f[n] is read for 1 <= n <= y.
double relation_partial_sum(std::span<const double> f, int k, int split, i64 y,
                            double budget = kDefaultEnumerationBudget);

struct SeriesConstant {
  double value = 0.0;  // head sum
  double y = 0.0;
  double tail_envelope = 0.0;  // c_tail y^{-1/2} log^3 y, measured not proven
};

inline constexpr double kDefaultTailConstant = 10.0;

/// sum_{n <= y} c(n)^2 / n^{3/2}.
SeriesConstant mean_square_constant(const PhasePair& phases, i64 y,
                                    double c_tail = kDefaultTailConstant);

/// sum_{v=1}^{k-1} cos(3pi(k-2v)/4) C(k-1, v) s_{k,v}(c; y), 2 <= k <= 4.
SeriesConstant moment_constant(int k, const PhasePair& phases, i64 y,
                               double c_tail = kDefaultTailConstant,
                               double budget = kDefaultEnumerationBudget);

/// cos(3pi(k-2v)/4) C(k-1, v).
double moment_constant_weight(int k, int split);

/// s(k) = 2^{k-2} + (k-6)/4.
Rational bookkeeping_exponent(int k);

/// Smallest even natural n >= A0 (A0 > 2).
i64 even_ceiling(const Rational& A0);

/// sum_i sum_{n <= y, alpha != 0} prod d(n_j) / ((prod n_j)^{3/4} |alpha(n; i)|), k in {2, 3}.
double alpha_reciprocal_sum(int k, i64 y, double budget = 2.0e8);

}  // namespace wdiv

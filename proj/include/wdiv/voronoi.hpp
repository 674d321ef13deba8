#pragma once

// Truncated Voronoi-type expansion of the weighted sum: the signed
// congruence coefficients, the collapsed head series, the truncated tails
// and the min(1, 1/(H||.||)) diagnostics.

#include <string>
#include <utility>
#include <vector>

#include "wdiv/arith.hpp"
#include "wdiv/weighted_sum.hpp"

namespace wdiv {

struct TruncationParams {
  double y = 0.0;  // head length
  double H = 2.0;
  int J = 0;

  TruncationParams(double y, double H, int J);

  /// N = 2^{J+1} H^2, the end of the tail range.
  double tail_end() const;

  /// J = floor((L + 2 log q1q2 - 4 log L) / log 2) with L = log T.
  static int default_J(double T, i64 modulus_product);

  /// Conditions of the expansion's validity regime that fail for these
  /// parameters (T^eps < y <= min(H^2, (q1q2)^2 T) L^-4). Advisory only.
  std::vector<std::string> regime_warnings(double T, i64 modulus_product, double eps = 0.01) const;
};

/// Which residue orientation a truncated coefficient uses.
enum class TailKind { k12, k21 };

/// [l = a (mod q)] + [l = -a (mod q)].
int cosine_class_weight(i64 l, const RationalPhase& phase);
/// [h = a (mod q)] - [h = -a (mod q)].
int sine_class_weight(i64 h, const RationalPhase& phase);

/// d(n; a1,q1,a2,q2) + d(n; -a1,q1,a2,q2) - d(n; a1,q1,-a2,q2) - d(n; -a1,q1,-a2,q2)
/// with n = h l, l carrying the mod-q1 condition and h the mod-q2 condition.
i64 voronoi_coefficient(i64 n, const PhasePair& phases);

/// {h, l} with h l = n, 1 <= h <= H, h <= l <= 2^{J+1} h; as (h, l), h ascending.
std::vector<std::pair<i64, i64>> admissible_pairs(i64 n, double H, int J);

/// Coefficient restricted to admissible pairs, each unordered pair counted once.
i64 truncated_coefficient(i64 n, double H, int J, const PhasePair& phases, TailKind kind);

/// Coefficients for n <= y, built once and shared read-only.
class CoefficientTable {
 public:
  CoefficientTable(i64 y, const PhasePair& phases);

  i64 y() const { return y_; }
  i64 operator[](i64 n) const { return coeff_.at(static_cast<size_t>(n)); }
  const std::vector<i64>& coefficients() const { return coeff_; }
  const PhasePair& phases() const { return phases_; }

 private:
  i64 y_;
  PhasePair phases_;
  std::vector<i64> coeff_;  // index 0 unused
};

/// Collapsed head series
///   q1 q2 x^{1/4} / (4 sqrt2 pi) sum_{n<=y} cos(4 pi sqrt(n x) - 3pi/4) c(n) / n^{3/4}.
/// Holds only the nonzero coefficients; cheap to evaluate at many x.
class VoronoiHead {
 public:
  VoronoiHead(const CoefficientTable& table, double y);

  double operator()(double x) const;
  double prefactor() const { return prefactor_; }
  size_t terms() const { return freq_.size(); }
  /// sum |c(n)| / n^{3/4}; scale of the oscillating sum.
  double absolute_weight() const;

 private:
  double prefactor_;
  std::vector<double> freq_;    // 4 pi sqrt(n)
  std::vector<double> weight_;  // c(n) / n^{3/4}
};

double voronoi_head(double x, double y, const PhasePair& phases);

/// Same series before the residue sums are collapsed: the weighted double
/// sum over (r1, r2) of x^{1/4}/(sqrt2 pi) sum_{n<=y} tau(n, x)/n^{3/4}.
double voronoi_head_uncollapsed(double x, double y, const PhasePair& phases);

inline constexpr double kDefaultTailBudget = 2.0e7;

/// Tail series over y < n <= 2^{J+1} H^2 with truncated coefficients.
double voronoi_tail(double x, const TruncationParams& params, const PhasePair& phases,
                    TailKind kind, double budget = kDefaultTailBudget);

/// sum_{r2=1}^{q2} sum_{n1 <= q1 sqrt(T)} min(1, 1/(H ||q1 x/n1 - r2/q2||)) for k12;
/// the k21 variant swaps the roles of the two phases.
double spike_diagnostic(double x, double H, double T, const PhasePair& phases, TailKind kind);

/// Both sides of the residue-sum collapse for a single factorisation n = h l:
///   lhs = sum_{r1,r2} cos(2pi r1 a1/q1) sin(2pi r2 a2/q2)
///         cos(4pi sqrt(nx) - 2pi(h r2/q2 + l r1/q1 + 1/8))
///   rhs = cosine_factor * (q2/2) sine_sign * cos(4pi sqrt(nx) - 3pi/4).
struct CollapseCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double cosine_factor = 0.0;  // 0, q1/2 (q1 > 2) or q1 (q1 <= 2)
  int sine_sign = 0;           // +1 for h = a2, -1 for h = -a2, else 0
};
CollapseCheck character_collapse(i64 n, i64 h, double x, const PhasePair& phases);

}  // namespace wdiv

#include "wdiv/congruence.hpp"

#include <cmath>
#include <limits>

namespace wdiv {

namespace {

// #{1 <= n <= m : n = r (mod q)} for 1 <= r <= q.
i64 residue_class_count(i64 m, i64 r, i64 q) { return m >= r ? (m - r) / q + 1 : 0; }

i64 floor_to_int(double x) {
  if (!(x < 9.0e18)) throw std::invalid_argument("argument too large for 64-bit counting");
  return static_cast<i64>(std::floor(x));
}

}  // namespace

i64 isqrt(i64 n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i64 congruence_divisor_count(i64 n, const CongruenceSpec& spec) {
  if (n < 1) throw std::invalid_argument("congruence_divisor_count: n must be >= 1");
  auto admissible = [&](i64 n1, i64 n2) {
    return residue_1q(n1, spec.q1()) == spec.r1() && residue_1q(n2, spec.q2()) == spec.r2();
  };
  i64 count = 0;
  for (i64 a = 1; a * a <= n; ++a) {
    if (n % a != 0) continue;
    const i64 b = n / a;
    count += admissible(a, b);
    if (a != b) count += admissible(b, a);
  }
  return count;
}

WeightedCount congruence_summatory(double x, const CongruenceSpec& spec, CountMode mode) {
  if (!(x >= 1.0)) throw std::invalid_argument("congruence_summatory: x must be >= 1");
  const i64 X = floor_to_int(x);
  const bool integral = static_cast<double>(X) == x;
  const i64 r1 = spec.r1(), q1 = spec.q1(), r2 = spec.r2(), q2 = spec.q2();

  WeightedCount out;
  if (mode == CountMode::brute) {
    for (i64 n1 = r1; n1 <= X; n1 += q1) {
      for (i64 n2 = r2; n1 * n2 <= X; n2 += q2) {
        out.twice += (integral && n1 * n2 == X) ? 1 : 2;
      }
    }
    return out;
  }

  const i64 s = isqrt(X);
  i64 full = 0;
  for (i64 n1 = r1; n1 <= s; n1 += q1) full += residue_class_count(X / n1, r2, q2);
  for (i64 n2 = r2; n2 <= s; n2 += q2) full += residue_class_count(X / n2, r1, q1);
  full -= residue_class_count(s, r1, q1) * residue_class_count(s, r2, q2);
  out.twice = 2 * full;
  if (integral) out.twice -= congruence_divisor_count(X, spec);
  return out;
}

double congruence_main_term(double x, const CongruenceSpec& spec, RangePolicy policy) {
  const double Q = static_cast<double>(spec.modulus_product());
  if (!std::isfinite(x)) throw std::invalid_argument("main term: non-finite x");
  if (policy == RangePolicy::strict && x < Q)
    throw std::invalid_argument("main term: x must be >= q1 q2");
  if (policy == RangePolicy::allow_below_modulus && x < 1.0)
    throw std::invalid_argument("main term: x must be >= 1");
  const double u = x / Q;
  const double coeff = digamma_rational(spec.r1(), spec.q1()) +
                       digamma_rational(spec.r2(), spec.q2()) + 1.0;
  return u * std::log(u) - coeff * u;
}

DeltaSample congruence_error(double x, const CongruenceSpec& spec) {
  DeltaSample s;
  s.x = x;
  s.main = congruence_main_term(x, spec);
  s.count = congruence_summatory(x, spec);
  s.delta = s.count.value() - s.main;
  return s;
}

double congruence_error_psi_form(double x, const CongruenceSpec& spec) {
  if (!(x >= 1.0)) throw std::invalid_argument("psi form: x must be >= 1");
  const double q1 = static_cast<double>(spec.q1());
  const double q2 = static_cast<double>(spec.q2());
  const double shift1 = static_cast<double>(spec.r1()) / q1;
  const double shift2 = static_cast<double>(spec.r2()) / q2;
  const double root = std::sqrt(x);

  CompensatedSum acc;
  const i64 lim1 = floor_to_int(q1 * root);
  for (i64 n1 = spec.r1(); n1 <= lim1; n1 += spec.q1())
    acc.add(-psi_frac(q1 * x / static_cast<double>(n1) - shift2));
  const i64 lim2 = floor_to_int(q2 * root);
  for (i64 n2 = spec.r2(); n2 <= lim2; n2 += spec.q2())
    acc.add(-psi_frac(q2 * x / static_cast<double>(n2) - shift1));
  return acc.value();
}

std::vector<i64> congruence_step_counts(i64 n_max, const CongruenceSpec& spec) {
  if (n_max < 0) throw std::invalid_argument("step counts: n_max must be >= 0");
  if (n_max > (i64{1} << 31)) throw BudgetExceeded("step counts: n_max above memory budget");
  std::vector<i64> counts(static_cast<size_t>(n_max) + 1, 0);
  for (i64 n1 = spec.r1(); n1 <= n_max; n1 += spec.q1()) {
    for (i64 n2 = spec.r2(); n1 * n2 <= n_max; n2 += spec.q2()) ++counts[n1 * n2];
  }
  for (size_t m = 1; m < counts.size(); ++m) counts[m] += counts[m - 1];
  return counts;
}

}  // namespace wdiv

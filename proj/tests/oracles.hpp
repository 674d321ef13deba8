#pragma once

// Test-only reference implementations. Deliberately naive and independent
// of the library's evaluation paths.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kGammaL = 0.577215664901532860606512090082402431L;

/// psi(z) = -gamma + sum_{k>=0} (1/(k+1) - 1/(k+z)), summed directly to
/// N terms with an Euler-Maclaurin tail.
inline long double digamma_series(long double z) {
  constexpr i64 N = 200000;
  long double s = 0.0L;
  for (i64 k = N - 1; k >= 0; --k) s += 1.0L / (k + 1) - 1.0L / (k + z);
  auto g = [&](long double k) { return 1.0L / (k + 1) - 1.0L / (k + z); };
  auto g1 = [&](long double k) { return -1.0L / ((k + 1) * (k + 1)) + 1.0L / ((k + z) * (k + z)); };
  auto g3 = [&](long double k) {
    return -6.0L / std::pow(k + 1, 4.0L) + 6.0L / std::pow(k + z, 4.0L);
  };
  const long double n = N;
  const long double tail = std::log((n + z) / (n + 1)) + g(n) / 2 - g1(n) / 12 + g3(n) / 720;
  return -kGammaL + s + tail;
}

inline bool in_class(i64 n, i64 r, i64 q) { return ((n - r) % q + q) % q == 0; }

/// Doubled weighted count of pairs n1 n2 <= x by scanning every pair.
inline i64 doubled_pair_count(double x, i64 r1, i64 q1, i64 r2, i64 q2) {
  const i64 X = static_cast<i64>(std::floor(x));
  const bool integral = static_cast<double>(X) == x;
  i64 twice = 0;
  for (i64 n1 = 1; n1 <= X; ++n1)
    for (i64 n2 = 1; n1 * n2 <= X; ++n2)
      if (in_class(n1, r1, q1) && in_class(n2, r2, q2)) twice += (integral && n1 * n2 == X) ? 1 : 2;
  return twice;
}

inline i64 divisor_pairs(i64 n, i64 r1, i64 q1, i64 r2, i64 q2) {
  i64 c = 0;
  for (i64 a = 1; a <= n; ++a)
    if (n % a == 0 && in_class(a, r1, q1) && in_class(n / a, r2, q2)) ++c;
  return c;
}

/// Weighted sum by literal double loop in long double.
inline long double weighted_sum(double t, i64 a1, i64 q1, i64 a2, i64 q2) {
  const i64 X = static_cast<i64>(std::floor(t));
  const bool integral = static_cast<double>(X) == t;
  long double s = 0.0L;
  for (i64 m = 1; m <= X; ++m)
    for (i64 n = 1; m * n <= X; ++n) {
      long double term = std::cos(2 * kPiL * (m * a1 % q1) / q1) * std::sin(2 * kPiL * (n * a2 % q2) / q2);
      if (integral && m * n == X) term /= 2;
      s += term;
    }
  return s;
}

inline i64 brute_divisor_count(i64 n) {
  i64 c = 0;
  for (i64 a = 1; a <= n; ++a) c += (n % a == 0);
  return c;
}

}  // namespace oracle

#include "wdiv/arith.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace wdiv {

namespace {

// Primes up to sqrt(1e8); magic-static initialisation makes the first call
// race-free and the table is read-only afterwards.
const std::vector<i64>& small_primes() {
  static const std::vector<i64> primes = [] {
    constexpr i64 limit = 10000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<i64> out;
    for (i64 p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (i64 m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return out;
  }();
  return primes;
}

// Calls visit(p, e) for each prime power p^e exactly dividing n.
template <class Visit>
void factorize(i64 n, Visit&& visit) {
  auto take = [&](i64 p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) visit(p, e);
  };
  for (i64 p : small_primes()) {
    if (p * p > n) break;
    take(p);
  }
  // Inputs above 1e8 continue with odd trial divisors past the cached table.
  for (i64 p = small_primes().back() + 2; p * p <= n; p += 2) take(p);
  if (n > 1) visit(n, 1);
}

}  // namespace

RationalPhase::RationalPhase(i64 a, i64 q) : a_(a), q_(q) {
  if (q < 1) throw std::invalid_argument("phase modulus must be >= 1");
  if (a < 1 || a > q) throw std::invalid_argument("phase numerator must lie in [1, q]");
  if (gcd(a, q) != 1) throw std::invalid_argument("phase a/q must be reduced");
}

CongruenceSpec::CongruenceSpec(i64 r1, i64 q1, i64 r2, i64 q2)
    : r1_(r1), q1_(q1), r2_(r2), q2_(q2) {
  if (q1 < 1 || q2 < 1) throw std::invalid_argument("moduli must be >= 1");
  if (r1 < 1 || r1 > q1 || r2 < 1 || r2 > q2)
    throw std::invalid_argument("residues must satisfy 1 <= r_i <= q_i");
}

std::string CongruenceSpec::to_string() const {
  return "(" + std::to_string(r1_) + "," + std::to_string(q1_) + "," + std::to_string(r2_) +
         "," + std::to_string(q2_) + ")";
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

double psi_frac(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("psi_frac: non-finite argument");
  return (t - std::floor(t)) - 0.5;
}

double dist_to_int(double t) {
  const double f = t - std::floor(t);
  return std::min(f, 1.0 - f);
}

double digamma_rational(i64 p, i64 q) {
  if (q < 1 || p < 1 || p > q) throw std::invalid_argument("digamma_rational: need 1 <= p <= q");
  const i64 g = gcd(p, q);
  p /= g;
  q /= g;
  if (p == q) return -kEulerGamma;
  // psi(p/q) = -gamma - log(2q) - (pi/2) cot(pi p/q)
  //            + 2 sum_{k=1}^{floor((q-1)/2)} cos(2 pi k p/q) log sin(pi k/q)
  double sum = 0.0;
  for (i64 k = 1; 2 * k < q; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>((k * p) % q) / static_cast<double>(q);
    sum += std::cos(angle) * std::log(std::sin(kPi * static_cast<double>(k) / static_cast<double>(q)));
  }
  const double z = kPi * static_cast<double>(p) / static_cast<double>(q);
  return -kEulerGamma - std::log(2.0 * static_cast<double>(q)) - 0.5 * kPi * std::cos(z) / std::sin(z) +
         2.0 * sum;
}

SqrtKernel squarefree_kernel(i64 n) {
  if (n < 1) throw std::invalid_argument("squarefree_kernel: n must be >= 1");
  SqrtKernel out;
  factorize(n, [&](i64 p, int e) {
    for (int i = 0; i < e / 2; ++i) out.multiplier *= p;
    if (e % 2) out.kernel *= p;
  });
  return out;
}

i64 divisor_count(i64 n) {
  if (n < 1) throw std::invalid_argument("divisor_count: n must be >= 1");
  i64 count = 1;
  factorize(n, [&](i64, int e) { count *= e + 1; });
  return count;
}

}  // namespace wdiv

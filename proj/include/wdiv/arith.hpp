#pragma once

// Shared domain types and scalar number-theoretic primitives.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wdiv {

using i64 = std::int64_t;

/// Thrown when a computation would exceed a configured size or time budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct EulerConstants {
  double gamma = kEulerGamma;
  const char* precision = "IEEE-754 binary64, correctly rounded";
};

/// Reduced fraction a/q with 1 <= a <= q and gcd(a, q) = 1.
class RationalPhase {
 public:
  RationalPhase(i64 a, i64 q);

  i64 a() const { return a_; }
  i64 q() const { return q_; }
  double value() const { return static_cast<double>(a_) / static_cast<double>(q_); }

  friend bool operator==(const RationalPhase&, const RationalPhase&) = default;

 private:
  i64 a_;
  i64 q_;
};

/// Residue/modulus quadruple (r1, q1, r2, q2), 1 <= r_i <= q_i.
class CongruenceSpec {
 public:
  CongruenceSpec(i64 r1, i64 q1, i64 r2, i64 q2);

  i64 r1() const { return r1_; }
  i64 q1() const { return q1_; }
  i64 r2() const { return r2_; }
  i64 q2() const { return q2_; }
  i64 modulus_product() const { return q1_ * q2_; }

  std::string to_string() const;

  friend bool operator==(const CongruenceSpec&, const CongruenceSpec&) = default;

 private:
  i64 r1_, q1_, r2_, q2_;
};

/// n = multiplier^2 * kernel with kernel squarefree.
struct SqrtKernel {
  i64 multiplier = 1;
  i64 kernel = 1;

  friend bool operator==(const SqrtKernel&, const SqrtKernel&) = default;
};

i64 gcd(i64 a, i64 b);

/// Residue of v in [1, q].
inline i64 residue_1q(i64 v, i64 q) {
  i64 r = v % q;
  if (r <= 0) r += q;
  return r;
}

/// Centred sawtooth {t} - 1/2. Exact integers map to -1/2.
double psi_frac(double t);

/// ||t||, distance to the nearest integer.
double dist_to_int(double t);

/// Gamma'/Gamma(p/q) for 1 <= p <= q via Gauss's finite formula.
double digamma_rational(i64 p, i64 q);

SqrtKernel squarefree_kernel(i64 n);

/// Number of ordered factorisations n = n1 n2.
i64 divisor_count(i64 n);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace wdiv

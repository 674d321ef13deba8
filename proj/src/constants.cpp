#include "wdiv/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wdiv/voronoi.hpp"

namespace wdiv {

namespace {

// Squarefree decomposition of every n <= y.
struct KernelTable {
  std::vector<i64> kernel;
  std::vector<i64> multiplier;

  explicit KernelTable(i64 y) : kernel(static_cast<size_t>(y) + 1), multiplier(static_cast<size_t>(y) + 1, 1) {
    for (i64 n = 0; n <= y; ++n) kernel[n] = n;
    for (i64 p = 2; p * p <= y; ++p) {
      const i64 p2 = p * p;
      for (i64 m = p2; m <= y; m += p2) {
        while (kernel[m] % p2 == 0) {
          kernel[m] /= p2;
          multiplier[m] *= p;
        }
      }
    }
  }
};

// (kernel, coefficient) map with at most a handful of entries.
struct SmallSignature {
  std::array<std::pair<i64, i64>, 4> e{};
  int size = 0;

  void add(i64 kernel, i64 coef) {
    for (int i = 0; i < size; ++i) {
      if (e[i].first == kernel) {
        e[i].second += coef;
        return;
      }
    }
    e[size++] = {kernel, coef};
  }
};

class RelationEnumerator {
 public:
  RelationEnumerator(int left_size, int right_size, i64 y, bool swap_output,
                     const std::function<void(std::span<const i64>)>& visit, double budget)
      : left_(left_size), right_(right_size), y_(y), swap_(swap_output), visit_(visit),
        budget_(budget), table_(y), tuple_(static_cast<size_t>(left_size + right_size)),
        out_(tuple_.size()) {}

  void run() { choose_left(0); }

 private:
  void choose_left(int pos) {
    if (pos == left_) {
      sig_ = SmallSignature{};
      for (int i = 0; i < left_; ++i) sig_.add(table_.kernel[tuple_[i]], table_.multiplier[tuple_[i]]);
      if (sig_.size > right_) return;
      remaining_ = sig_;
      choose_right(0);
      return;
    }
    for (i64 n = 1; n <= y_; ++n) {
      tuple_[pos] = n;
      choose_left(pos + 1);
    }
  }

  void choose_right(int pos) {
    int open = 0;
    i64 total = 0;
    for (int j = 0; j < remaining_.size; ++j) {
      if (remaining_.e[j].second > 0) {
        ++open;
        total += remaining_.e[j].second;
      }
    }
    const int left_positions = right_ - pos;
    if (left_positions == 0) {
      if (total == 0) emit();
      return;
    }
    if (open > left_positions || total < left_positions) return;
    for (int j = 0; j < remaining_.size; ++j) {
      const i64 d = remaining_.e[j].first;
      const i64 have = remaining_.e[j].second;
      for (i64 c = 1; c <= have && c * c * d <= y_; ++c) {
        tuple_[left_ + pos] = c * c * d;
        remaining_.e[j].second = have - c;
        choose_right(pos + 1);
      }
      remaining_.e[j].second = have;
    }
  }

  void emit() {
    if (++emitted_ > budget_) throw BudgetExceeded("sqrt relation enumeration exceeded its budget");
    if (!swap_) {
      visit_(tuple_);
      return;
    }
    std::copy(tuple_.begin() + left_, tuple_.end(), out_.begin());
    std::copy(tuple_.begin(), tuple_.begin() + left_, out_.begin() + right_);
    visit_(out_);
  }

  int left_, right_;
  i64 y_;
  bool swap_;
  const std::function<void(std::span<const i64>)>& visit_;
  double budget_;
  KernelTable table_;
  std::vector<i64> tuple_, out_;
  SmallSignature sig_, remaining_;
  double emitted_ = 0;
};

void check_relation_shape(int k, int split) {
  if (k < 2) throw std::invalid_argument("sqrt relation: k must be >= 2");
  if (split < 1 || split >= k) throw std::invalid_argument("sqrt relation: need 1 <= split < k");
}

i64 binomial(int n, int r) {
  i64 out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

}  // namespace

int SignPattern::weight() const {
  int w = 0;
  for (int b : bits) w += b;
  return w;
}

double SignPattern::beta() const { return (k() - 2 * weight()) * 0.75 * kPi; }

std::vector<SignPattern> SignPattern::all(int k) {
  if (k < 2 || k > 20) throw std::invalid_argument("SignPattern::all: k out of range");
  std::vector<SignPattern> out;
  for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
    SignPattern p;
    for (int j = 0; j < k - 1; ++j) p.bits.push_back((mask >> j) & 1u);
    out.push_back(std::move(p));
  }
  return out;
}

KernelSignature side_signature(std::span<const i64> terms) {
  KernelSignature sig;
  for (i64 n : terms) {
    const SqrtKernel sk = squarefree_kernel(n);
    auto it = std::find_if(sig.begin(), sig.end(), [&](const auto& e) { return e.first == sk.kernel; });
    if (it == sig.end()) {
      sig.emplace_back(sk.kernel, sk.multiplier);
    } else {
      it->second += sk.multiplier;
    }
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool is_sqrt_relation(std::span<const i64> terms, int split) {
  check_relation_shape(static_cast<int>(terms.size()), split);
  return side_signature(terms.first(static_cast<size_t>(split))) ==
         side_signature(terms.subspan(static_cast<size_t>(split)));
}

bool alpha_vanishes(std::span<const i64> terms, const SignPattern& pattern) {
  if (static_cast<int>(terms.size()) != pattern.k())
    throw std::invalid_argument("alpha_vanishes: pattern length must be k - 1");
  KernelSignature sig;
  for (size_t j = 0; j < terms.size(); ++j) {
    const SqrtKernel sk = squarefree_kernel(terms[j]);
    const i64 coef = (j > 0 && pattern.bits[j - 1]) ? -sk.multiplier : sk.multiplier;
    auto it = std::find_if(sig.begin(), sig.end(), [&](const auto& e) { return e.first == sk.kernel; });
    if (it == sig.end()) {
      sig.emplace_back(sk.kernel, coef);
    } else {
      it->second += coef;
    }
  }
  return std::all_of(sig.begin(), sig.end(), [](const auto& e) { return e.second == 0; });
}

void for_each_sqrt_relation(int k, int split, i64 y,
                            const std::function<void(std::span<const i64>)>& visit, double budget) {
  check_relation_shape(k, split);
  if (k > 4) throw std::invalid_argument("sqrt relation enumeration supports k <= 4");
  if (y < 1) return;
  const int small = std::min(split, k - split);
  if (std::pow(static_cast<double>(y), small) > budget)
    throw BudgetExceeded("sqrt relation enumeration: y^min(v, k-v) exceeds budget");
  const bool swap = split > k - split;
  RelationEnumerator e(small, k - small, y, swap, visit, budget);
  e.run();
}

std::vector<SqrtRelation> enumerate_sqrt_relations(int k, int split, i64 y, double budget) {
  std::vector<SqrtRelation> out;
  for_each_sqrt_relation(
      k, split, y,
      [&](std::span<const i64> t) { out.push_back({std::vector<i64>(t.begin(), t.end()), split}); },
      budget);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.terms < b.terms; });
  return out;
}

double relation_partial_sum(std::span<const double> f, int k, int split, i64 y, double budget) {
  if (static_cast<i64>(f.size()) <= y) throw std::invalid_argument("relation_partial_sum: f must cover 1..y");
  std::vector<double> scaled(static_cast<size_t>(y) + 1, 0.0);
  for (i64 n = 1; n <= y; ++n) scaled[n] = f[n] / std::pow(static_cast<double>(n), 0.75);
  CompensatedSum acc;
  for_each_sqrt_relation(
      k, split, y,
      [&](std::span<const i64> t) {
        double p = 1.0;
        for (i64 n : t) p *= scaled[n];
        if (p != 0.0) acc.add(p);
      },
      budget);
  return acc.value();
}

namespace {

double tail_envelope(double c_tail, i64 y) {
  if (y < 2) return c_tail;
  const double ly = std::log(static_cast<double>(y));
  return c_tail * ly * ly * ly / std::sqrt(static_cast<double>(y));
}

}  // namespace

SeriesConstant mean_square_constant(const PhasePair& phases, i64 y, double c_tail) {
  if (y < 1) throw std::invalid_argument("mean_square_constant: y must be >= 1");
  const CoefficientTable table(y, phases);
  CompensatedSum acc;
  for (i64 n = 1; n <= y; ++n) {
    const double c = static_cast<double>(table[n]);
    if (c != 0.0) acc.add(c * c / std::pow(static_cast<double>(n), 1.5));
  }
  return {acc.value(), static_cast<double>(y), tail_envelope(c_tail, y)};
}

double moment_constant_weight(int k, int split) {
  return std::cos(3.0 * kPi * (k - 2 * split) / 4.0) * static_cast<double>(binomial(k - 1, split));
}

SeriesConstant moment_constant(int k, const PhasePair& phases, i64 y, double c_tail, double budget) {
  if (k < 2 || k > 4) throw std::invalid_argument("moment_constant: supported k is 2..4");
  if (y < 1) throw std::invalid_argument("moment_constant: y must be >= 1");
  const CoefficientTable table(y, phases);
  std::vector<double> f(static_cast<size_t>(y) + 1, 0.0);
  for (i64 n = 1; n <= y; ++n) f[n] = static_cast<double>(table[n]);

  CompensatedSum acc;
  for (int v = 1; v < k; ++v) {
    const double w = moment_constant_weight(k, v);
    // cos(3pi/2) is zero in exact arithmetic; skip the enumeration.
    if (std::abs(w) < 1e-12) continue;
    acc.add(w * relation_partial_sum(f, k, v, y, budget));
  }
  return {acc.value(), static_cast<double>(y), tail_envelope(c_tail, y)};
}

Rational bookkeeping_exponent(int k) {
  if (k < 2 || k > 60) throw std::invalid_argument("bookkeeping_exponent: k out of range");
  return Rational(i64{1} << (k - 2)) + Rational(k - 6, 4);
}

i64 even_ceiling(const Rational& A0) {
  if (A0 <= Rational(2)) throw std::invalid_argument("even_ceiling: A0 must exceed 2");
  i64 n = A0.numerator() / A0.denominator();
  if (Rational(n) < A0) ++n;
  if (n % 2) ++n;
  return n;
}

double alpha_reciprocal_sum(int k, i64 y, double budget) {
  if (k != 2 && k != 3) throw std::invalid_argument("alpha_reciprocal_sum: k must be 2 or 3");
  if (y < 1) throw std::invalid_argument("alpha_reciprocal_sum: y must be >= 1");
  if (std::pow(static_cast<double>(y), k) * std::ldexp(1.0, k - 1) > budget)
    throw BudgetExceeded("alpha_reciprocal_sum: y^k 2^{k-1} exceeds budget");

  const KernelTable kt(y);
  std::vector<double> root(static_cast<size_t>(y) + 1), weight(static_cast<size_t>(y) + 1);
  for (i64 n = 1; n <= y; ++n) {
    root[n] = std::sqrt(static_cast<double>(n));
    weight[n] = static_cast<double>(divisor_count(n)) / std::pow(static_cast<double>(n), 0.75);
  }
  auto vanishes = [&](const std::array<i64, 3>& n, const std::array<int, 3>& sign) {
    SmallSignature s;
    for (int j = 0; j < k; ++j) s.add(kt.kernel[n[j]], sign[j] * kt.multiplier[n[j]]);
    for (int j = 0; j < s.size; ++j)
      if (s.e[j].second != 0) return false;
    return true;
  };

  CompensatedSum acc;
  for (const auto& pattern : SignPattern::all(k)) {
    std::array<int, 3> sign{1, 1, 1};
    for (int j = 1; j < k; ++j) sign[j] = pattern.bits[j - 1] ? -1 : 1;
    std::array<i64, 3> n{1, 1, 1};
    const i64 y3 = k == 3 ? y : 1;
    for (n[0] = 1; n[0] <= y; ++n[0]) {
      for (n[1] = 1; n[1] <= y; ++n[1]) {
        for (n[2] = 1; n[2] <= y3; ++n[2]) {
          if (vanishes(n, sign)) continue;
          double alpha = 0.0, w = 1.0;
          for (int j = 0; j < k; ++j) {
            alpha += sign[j] * root[n[j]];
            w *= weight[n[j]];
          }
          acc.add(w / std::abs(alpha));
        }
      }
    }
  }
  return acc.value();
}

}  // namespace wdiv

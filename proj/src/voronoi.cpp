#include "wdiv/voronoi.hpp"

#include <cmath>

namespace wdiv {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

double head_prefactor(i64 modulus_product) {
  return static_cast<double>(modulus_product) / (4.0 * kSqrt2 * kPi);
}

double frac_turn(i64 num, i64 den) {
  return 2.0 * kPi * static_cast<double>(num % den) / static_cast<double>(den);
}

}  // namespace

TruncationParams::TruncationParams(double y_, double H_, int J_) : y(y_), H(H_), J(J_) {
  if (!(y >= 0.0)) throw std::invalid_argument("TruncationParams: y must be >= 0");
  if (!(H >= 2.0)) throw std::invalid_argument("TruncationParams: H must be >= 2");
  if (J < 0 || J > 60) throw std::invalid_argument("TruncationParams: J out of range");
}

double TruncationParams::tail_end() const { return std::ldexp(H * H, J + 1); }

int TruncationParams::default_J(double T, i64 modulus_product) {
  if (!(T > std::exp(1.0))) throw std::invalid_argument("default_J: T must exceed e");
  const double L = std::log(T);
  const double v = (L + 2.0 * std::log(static_cast<double>(modulus_product)) - 4.0 * std::log(L)) /
                   std::log(2.0);
  return v < 0.0 ? 0 : static_cast<int>(std::floor(v));
}

std::vector<std::string> TruncationParams::regime_warnings(double T, i64 modulus_product,
                                                           double eps) const {
  std::vector<std::string> out;
  const double L = std::log(T);
  const double Q = static_cast<double>(modulus_product);
  if (!(y > std::pow(T, eps))) out.emplace_back("y <= T^eps");
  const double cap = std::min(H * H, Q * Q * T) / std::pow(L, 4.0);
  if (!(y <= cap)) out.emplace_back("y > min(H^2, (q1q2)^2 T) L^-4");
  return out;
}

int cosine_class_weight(i64 l, const RationalPhase& phase) {
  const i64 r = residue_1q(l, phase.q());
  return (r == residue_1q(phase.a(), phase.q())) + (r == residue_1q(-phase.a(), phase.q()));
}

int sine_class_weight(i64 h, const RationalPhase& phase) {
  const i64 r = residue_1q(h, phase.q());
  return (r == residue_1q(phase.a(), phase.q())) - (r == residue_1q(-phase.a(), phase.q()));
}

i64 voronoi_coefficient(i64 n, const PhasePair& phases) {
  if (n < 1) throw std::invalid_argument("voronoi_coefficient: n must be >= 1");
  auto term = [&](i64 h, i64 l) {
    return static_cast<i64>(sine_class_weight(h, phases.theta2)) *
           cosine_class_weight(l, phases.theta1);
  };
  i64 total = 0;
  for (i64 a = 1; a * a <= n; ++a) {
    if (n % a != 0) continue;
    const i64 b = n / a;
    total += term(a, b);
    if (a != b) total += term(b, a);
  }
  return total;
}

std::vector<std::pair<i64, i64>> admissible_pairs(i64 n, double H, int J) {
  if (n < 1) throw std::invalid_argument("admissible_pairs: n must be >= 1");
  if (!(H >= 2.0)) throw std::invalid_argument("admissible_pairs: H must be >= 2");
  std::vector<std::pair<i64, i64>> out;
  const double stretch = std::ldexp(1.0, J + 1);
  for (i64 h = 1; h * h <= n && static_cast<double>(h) <= H; ++h) {
    if (n % h != 0) continue;
    const i64 l = n / h;
    if (static_cast<double>(l) <= stretch * static_cast<double>(h)) out.emplace_back(h, l);
  }
  return out;
}

i64 truncated_coefficient(i64 n, double H, int J, const PhasePair& phases, TailKind kind) {
  i64 total = 0;
  for (auto [h, l] : admissible_pairs(n, H, J)) {
    if (kind == TailKind::k12) {
      total += static_cast<i64>(sine_class_weight(h, phases.theta2)) *
               cosine_class_weight(l, phases.theta1);
    } else {
      total += static_cast<i64>(cosine_class_weight(h, phases.theta1)) *
               sine_class_weight(l, phases.theta2);
    }
  }
  return total;
}

CoefficientTable::CoefficientTable(i64 y, const PhasePair& phases)
    : y_(y), phases_(phases) {
  if (y < 0) throw std::invalid_argument("CoefficientTable: y must be >= 0");
  if (y > 500'000'000) throw BudgetExceeded("CoefficientTable: y above memory budget");
  coeff_.assign(static_cast<size_t>(y) + 1, 0);
  const i64 q1 = phases.theta1.q(), q2 = phases.theta2.q();
  std::vector<int> sine_w(static_cast<size_t>(q2));
  for (i64 r = 0; r < q2; ++r) sine_w[r] = sine_class_weight(r == 0 ? q2 : r, phases.theta2);
  for (i64 l = 1; l <= y; ++l) {
    const int cw = cosine_class_weight(residue_1q(l, q1), phases.theta1);
    if (cw == 0) continue;
    i64 r = 0;
    for (i64 n = l; n <= y; n += l) {
      if (++r == q2) r = 0;
      coeff_[n] += cw * sine_w[r];
    }
  }
}

VoronoiHead::VoronoiHead(const CoefficientTable& table, double y)
    : prefactor_(head_prefactor(table.phases().modulus_product())) {
  if (!(y >= 0.0)) throw std::invalid_argument("VoronoiHead: y must be >= 0");
  const i64 n_max = std::min<i64>(table.y(), static_cast<i64>(std::floor(y)));
  for (i64 n = 1; n <= n_max; ++n) {
    const i64 c = table[n];
    if (c == 0) continue;
    const double dn = static_cast<double>(n);
    freq_.push_back(4.0 * kPi * std::sqrt(dn));
    weight_.push_back(static_cast<double>(c) / std::pow(dn, 0.75));
  }
}

double VoronoiHead::operator()(double x) const {
  const double root = std::sqrt(x);
  constexpr double shift = 0.75 * kPi;
  double acc = 0.0;
  for (size_t k = 0; k < freq_.size(); ++k) acc += weight_[k] * std::cos(freq_[k] * root - shift);
  return prefactor_ * std::pow(x, 0.25) * acc;
}

double VoronoiHead::absolute_weight() const {
  double s = 0.0;
  for (double w : weight_) s += std::abs(w);
  return s;
}

double voronoi_head(double x, double y, const PhasePair& phases) {
  if (!(x >= 1.0)) throw std::invalid_argument("voronoi_head: x must be >= 1");
  if (!(y >= 0.0)) throw std::invalid_argument("voronoi_head: y must be >= 0");
  const CoefficientTable table(static_cast<i64>(std::floor(y)), phases);
  return VoronoiHead(table, y)(x);
}

double voronoi_head_uncollapsed(double x, double y, const PhasePair& phases) {
  if (!(x >= 1.0)) throw std::invalid_argument("voronoi_head_uncollapsed: x must be >= 1");
  if (!(y >= 0.0)) throw std::invalid_argument("voronoi_head_uncollapsed: y must be >= 0");
  const i64 a1 = phases.theta1.a(), q1 = phases.theta1.q();
  const i64 a2 = phases.theta2.a(), q2 = phases.theta2.q();
  const i64 n_max = static_cast<i64>(std::floor(y));

  CompensatedSum total;
  for (i64 r1 = 1; r1 <= q1; ++r1) {
    const double c = std::cos(frac_turn(r1 * a1, q1));
    for (i64 r2 = 1; r2 <= q2; ++r2) {
      const double s = std::sin(frac_turn(r2 * a2, q2));
      if (c * s == 0.0) continue;
      CompensatedSum inner;
      for (i64 n = 1; n <= n_max; ++n) {
        const double phase = 4.0 * kPi * std::sqrt(static_cast<double>(n) * x);
        double tau = 0.0;
        for (i64 h = 1; h <= n; ++h) {
          if (n % h != 0) continue;
          const i64 l = n / h;
          // 2 pi (h r2/q2 + l r1/q1 + 1/8), each fraction reduced mod 1
          const double shift = frac_turn(h % q2 * r2, q2) + frac_turn(l % q1 * r1, q1) + 0.25 * kPi;
          tau += std::cos(phase - shift);
        }
        inner.add(tau / std::pow(static_cast<double>(n), 0.75));
      }
      total.add(c * s * inner.value());
    }
  }
  return std::pow(x, 0.25) / (kSqrt2 * kPi) * total.value();
}

double voronoi_tail(double x, const TruncationParams& params, const PhasePair& phases,
                    TailKind kind, double budget) {
  if (!(x >= 1.0)) throw std::invalid_argument("voronoi_tail: x must be >= 1");
  const double n_end = params.tail_end();
  if (params.y >= n_end) return 0.0;
  const double H = params.H;
  const double stretch = std::ldexp(1.0, params.J + 1);
  // Work is the number of admissible pairs, roughly H * 2^{J+1} H.
  if (std::floor(H) * stretch * H > budget)
    throw BudgetExceeded("voronoi_tail: 2^{J+1} H^2 exceeds the configured budget");

  const double root = std::sqrt(x);
  CompensatedSum acc;
  for (i64 h = 1; static_cast<double>(h) <= H; ++h) {
    const i64 l_hi = static_cast<i64>(std::min(stretch * static_cast<double>(h),
                                               std::floor(n_end / static_cast<double>(h))));
    const int wh = kind == TailKind::k12 ? sine_class_weight(h, phases.theta2)
                                         : cosine_class_weight(h, phases.theta1);
    if (wh == 0) continue;
    for (i64 l = h; l <= l_hi; ++l) {
      const double n = static_cast<double>(h) * static_cast<double>(l);
      if (n <= params.y) continue;
      const int wl = kind == TailKind::k12 ? cosine_class_weight(l, phases.theta1)
                                           : sine_class_weight(l, phases.theta2);
      if (wl == 0) continue;
      acc.add(wh * wl * std::cos(4.0 * kPi * std::sqrt(n) * root - 0.75 * kPi) / std::pow(n, 0.75));
    }
  }
  return head_prefactor(phases.modulus_product()) * std::pow(x, 0.25) * acc.value();
}

double spike_diagnostic(double x, double H, double T, const PhasePair& phases, TailKind kind) {
  if (!(H >= 2.0)) throw std::invalid_argument("spike_diagnostic: H must be >= 2");
  if (!(T >= 1.0)) throw std::invalid_argument("spike_diagnostic: T must be >= 1");
  const i64 qa = kind == TailKind::k12 ? phases.theta1.q() : phases.theta2.q();
  const i64 qb = kind == TailKind::k12 ? phases.theta2.q() : phases.theta1.q();
  const i64 n_max = static_cast<i64>(std::floor(static_cast<double>(qa) * std::sqrt(T)));
  double total = 0.0;
  for (i64 r = 1; r <= qb; ++r) {
    const double shift = static_cast<double>(r) / static_cast<double>(qb);
    for (i64 n = 1; n <= n_max; ++n) {
      const double d = dist_to_int(static_cast<double>(qa) * x / static_cast<double>(n) - shift);
      total += (H * d <= 1.0) ? 1.0 : 1.0 / (H * d);
    }
  }
  return total;
}

CollapseCheck character_collapse(i64 n, i64 h, double x, const PhasePair& phases) {
  if (n < 1 || h < 1) throw std::invalid_argument("character_collapse: n, h must be >= 1");
  if (n % h != 0) throw std::invalid_argument("character_collapse: h must divide n");
  const i64 l = n / h;
  const i64 a1 = phases.theta1.a(), q1 = phases.theta1.q();
  const i64 a2 = phases.theta2.a(), q2 = phases.theta2.q();
  const double phase = 4.0 * kPi * std::sqrt(static_cast<double>(n) * x);

  CompensatedSum lhs;
  for (i64 r1 = 1; r1 <= q1; ++r1) {
    const double c = std::cos(frac_turn(r1 * a1, q1));
    for (i64 r2 = 1; r2 <= q2; ++r2) {
      const double s = std::sin(frac_turn(r2 * a2, q2));
      const double shift = frac_turn(h % q2 * r2, q2) + frac_turn(l % q1 * r1, q1) + 0.25 * kPi;
      lhs.add(c * s * std::cos(phase - shift));
    }
  }

  CollapseCheck out;
  out.lhs = lhs.value();
  out.cosine_factor = 0.5 * static_cast<double>(q1) * cosine_class_weight(l, phases.theta1);
  out.sine_sign = sine_class_weight(h, phases.theta2);
  out.rhs = out.cosine_factor * 0.5 * static_cast<double>(q2) * out.sine_sign *
            std::cos(phase - 0.75 * kPi);
  return out;
}

}  // namespace wdiv

#include "wdiv/weighted_sum.hpp"

#include <cmath>

#include "wdiv/congruence.hpp"

namespace wdiv {

namespace {

constexpr i64 kBlock = 4096;

double angle_of(i64 m, i64 a, i64 q) {
  return 2.0 * kPi * static_cast<double>((m % q) * a % q) / static_cast<double>(q);
}

}  // namespace

std::vector<double> cos_table(const RationalPhase& phase) {
  std::vector<double> t(static_cast<size_t>(phase.q()));
  for (i64 m = 0; m < phase.q(); ++m) t[m] = std::cos(angle_of(m, phase.a(), phase.q()));
  return t;
}

std::vector<double> sin_table(const RationalPhase& phase) {
  std::vector<double> t(static_cast<size_t>(phase.q()));
  for (i64 m = 0; m < phase.q(); ++m) t[m] = std::sin(angle_of(m, phase.a(), phase.q()));
  return t;
}

double StepSeries::at(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("StepSeries::at: non-finite t");
  const double fl = std::floor(t);
  const i64 m = static_cast<i64>(fl);
  if (m < t_min || m >= t_end()) throw std::out_of_range("StepSeries::at: t outside series");
  if (fl != t) return on_interval(m);
  if (m == t_min) throw std::out_of_range("StepSeries::at: left endpoint has no left interval");
  return 0.5 * (on_interval(m - 1) + on_interval(m));
}

double weighted_sum_direct(double t, const PhasePair& phases) {
  if (!(t >= 1.0)) throw std::invalid_argument("weighted_sum_direct: t must be >= 1");
  if (!(t < 4.0e15)) throw std::invalid_argument("weighted_sum_direct: t too large");
  const i64 X = static_cast<i64>(std::floor(t));
  const bool integral = static_cast<double>(X) == t;
  const auto c = cos_table(phases.theta1);
  const auto s = sin_table(phases.theta2);
  const i64 q1 = phases.theta1.q(), q2 = phases.theta2.q();

  CompensatedSum total;
  double block = 0.0;
  i64 in_block = 0;
  for (i64 m = 1; m <= X; ++m) {
    const i64 n_max = X / m;
    const double cm = c[m % q1];
    for (i64 n = 1; n <= n_max; ++n) {
      double term = cm * s[n % q2];
      if (integral && m * n == X) term *= 0.5;
      block += term;
      if (++in_block == kBlock) {
        total.add(block);
        block = 0.0;
        in_block = 0;
      }
    }
  }
  total.add(block);
  return total.value();
}

ErrorTermExpansion weighted_sum_expansion(double x, const PhasePair& phases) {
  if (!(x >= 1.0)) throw std::invalid_argument("weighted_sum_expansion: x must be >= 1");
  const i64 a1 = phases.theta1.a(), q1 = phases.theta1.q();
  const i64 a2 = phases.theta2.a(), q2 = phases.theta2.q();
  const double Q = static_cast<double>(q1 * q2);

  double sum_cos = 0.0, sum_sin = 0.0, sum_cos_psi = 0.0, sum_sin_psi = 0.0;
  for (i64 r1 = 1; r1 <= q1; ++r1) {
    const double c = std::cos(angle_of(r1, a1, q1));
    sum_cos += c;
    sum_cos_psi += c * digamma_rational(r1, q1);
  }
  for (i64 r2 = 1; r2 <= q2; ++r2) {
    const double s = std::sin(angle_of(r2, a2, q2));
    sum_sin += s;
    sum_sin_psi += s * digamma_rational(r2, q2);
  }

  ErrorTermExpansion out;
  out.log_line = (x * std::log(x) - x) * sum_cos * sum_sin;
  out.digamma_line_1 = -x * sum_cos_psi * sum_sin;
  out.digamma_line_2 = -x * sum_sin_psi * sum_cos;

  CompensatedSum err;
  for (i64 r1 = 1; r1 <= q1; ++r1) {
    const double c = std::cos(angle_of(r1, a1, q1));
    for (i64 r2 = 1; r2 <= q2; ++r2) {
      const double s = std::sin(angle_of(r2, a2, q2));
      const double w = c * s;
      if (w == 0.0) continue;
      err.add(w * congruence_error(Q * x, CongruenceSpec(r1, q1, r2, q2)).delta);
    }
  }
  out.error_line = err.value();
  return out;
}

double weighted_sum_via_error_terms(double x, const PhasePair& phases) {
  return weighted_sum_expansion(x, phases).error_line;
}

StepSeries weighted_sum_steps(i64 n_max, const PhasePair& phases, i64 budget) {
  if (n_max < 2) throw std::invalid_argument("weighted_sum_steps: n_max must be >= 2");
  if (n_max > budget) throw BudgetExceeded("weighted_sum_steps: n_max exceeds the step budget");
  const auto c = cos_table(phases.theta1);
  const auto s = sin_table(phases.theta2);
  const i64 q1 = phases.theta1.q(), q2 = phases.theta2.q();

  StepSeries out;
  out.modulus = q1 * q2;
  out.t_min = 0;
  out.values.assign(static_cast<size_t>(n_max), 0.0);
  auto& inc = out.values;
  const i64 last = n_max - 1;
  for (i64 m = 1; m <= last; ++m) {
    const double cm = c[m % q1];
    if (cm == 0.0) continue;
    i64 r = 1;
    for (i64 t = m; t <= last; t += m, ++r) {
      if (r == q2) r = 0;
      inc[t] += cm * s[r];
    }
  }
  CompensatedSum running;
  for (i64 t = 1; t <= last; ++t) {
    running.add(inc[t]);
    inc[t] = running.value();
  }
  return out;
}

double full_period_trig_sum(i64 a, i64 q, double theta, TrigKind kind) {
  if (q < 2) throw std::invalid_argument("full_period_trig_sum: q must be >= 2");
  if (gcd(a, q) != 1) throw std::invalid_argument("full_period_trig_sum: gcd(a, q) must be 1");
  CompensatedSum acc;
  for (i64 r = 1; r <= q; ++r) {
    const double arg = angle_of(r, residue_1q(a, q), q) + theta;
    acc.add(kind == TrigKind::sin ? std::sin(arg) : std::cos(arg));
  }
  return acc.value();
}

}  // namespace wdiv

#include "wdiv/moments.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "wdiv/constants.hpp"
#include "wdiv/voronoi.hpp"

namespace wdiv {

namespace {

double ipow(double v, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= v;
  return r;
}

template <class F>
double gauss_legendre(F&& f, double a, double b, int order) {
  using boost::math::quadrature::gauss;
  switch (order) {
    case 2: return gauss<double, 2>::integrate(f, a, b);
    case 3: return gauss<double, 3>::integrate(f, a, b);
    case 4: return gauss<double, 4>::integrate(f, a, b);
    case 5: return gauss<double, 5>::integrate(f, a, b);
    case 6: return gauss<double, 6>::integrate(f, a, b);
    case 8: return gauss<double, 8>::integrate(f, a, b);
    case 10: return gauss<double, 10>::integrate(f, a, b);
    case 16: return gauss<double, 16>::integrate(f, a, b);
    case 20: return gauss<double, 20>::integrate(f, a, b);
    default: throw std::invalid_argument("quadrature order must be one of 2,3,4,5,6,8,10,16,20");
  }
}

/// int_0^w |g(root + dir s)|^A ds for g with a simple zero at root: the
/// factor s^A is integrated exactly against shifted Legendre polynomials,
/// int_0^1 x^A P_j(2x-1) dx = A(A-1)..(A-j+1) / ((A+1)..(A+j+1)),
/// and h = |g / s|^A is projected by Gauss-Legendre.
template <class G>
double root_weighted_integral(G&& g, double root, double w, double dir, double A, int order) {
  if (!(w > 0.0)) return 0.0;
  auto h = [&](double x) {
    const double s = w * x;
    return std::pow(std::abs(g(root + dir * s)) / s, A);
  };
  double total = 0.0, moment = 1.0 / (A + 1.0);
  for (int j = 0; j < order; ++j) {
    const double c = gauss_legendre([&](double x) { return h(x) * std::legendre(j, 2.0 * x - 1.0); }, 0.0, 1.0, order);
    total += (2 * j + 1) * c * moment;
    moment *= (A - j) / (A + j + 2.0);
  }
  return total * std::pow(w, A + 1.0);
}

void check_T(double T) {
  if (!(T >= 1.0) || !std::isfinite(T)) throw std::invalid_argument("T must be finite and >= 1");
}

}  // namespace

i64 steps_needed(double T, i64 modulus_product) {
  const double t_end = std::ceil(static_cast<double>(modulus_product) * T);
  if (!(t_end < 4.0e15)) throw BudgetExceeded("q1 q2 T too large");
  return std::max<i64>(2, static_cast<i64>(t_end));
}

double integrate_steps_power(const StepSeries& series, double a, double b, int k) {
  if (k < 0) throw std::invalid_argument("integrate_steps_power: k must be >= 0");
  if (!(b >= a)) throw std::invalid_argument("integrate_steps_power: need a <= b");
  const double Q = static_cast<double>(series.modulus);
  const double ta = Q * a, tb = Q * b;
  const i64 m_lo = static_cast<i64>(std::floor(ta));
  const i64 m_hi = static_cast<i64>(std::ceil(tb)) - 1;
  if (m_hi >= series.t_end() || m_lo < series.t_min)
    throw std::out_of_range("integrate_steps_power: range exceeds the step series");
  CompensatedSum acc;
  for (i64 m = m_lo; m <= m_hi; ++m) {
    const double len = std::min(static_cast<double>(m + 1), tb) - std::max(static_cast<double>(m), ta);
    if (len > 0.0) acc.add(ipow(series.on_interval(m), k) * len);
  }
  return acc.value() / Q;
}

double integrate_weighted_power(const StepSeries& series, double T, int k) {
  check_T(T);
  if (k < 1) throw std::invalid_argument("integrate_weighted_power: k must be >= 1");
  CompensatedSum acc;
  double hi = T;
  while (hi / 2.0 > 1.0) {
    acc.add(integrate_steps_power(series, hi / 2.0, hi, k));
    hi /= 2.0;
  }
  acc.add(integrate_steps_power(series, 1.0, hi, k));
  return acc.value();
}

double integrate_weighted_power(double T, int k, const PhasePair& phases) {
  check_T(T);
  if (T == 1.0) return 0.0;
  const StepSeries series = weighted_sum_steps(steps_needed(T, phases.modulus_product()), phases);
  return integrate_weighted_power(series, T, k);
}

double integrate_error_abs_power(double T, double A, const CongruenceSpec& spec, int order) {
  check_T(T);
  if (!(A >= 0.0)) throw std::invalid_argument("integrate_error_abs_power: A must be >= 0");
  if (A == 0.0) return T - 1.0;
  const i64 Qi = spec.modulus_product();
  const double Q = static_cast<double>(Qi);
  const i64 n_steps = steps_needed(T, Qi);
  if (n_steps > kDefaultStepBudget) throw BudgetExceeded("integrate_error_abs_power: q1 q2 T over budget");
  const auto counts = congruence_step_counts(n_steps, spec);
  const double coeff = digamma_rational(spec.r1(), spec.q1()) + digamma_rational(spec.r2(), spec.q2()) + 1.0;
  auto main = [&](double t) {
    const double u = t / Q;
    return u * std::log(u) - coeff * u;
  };

  const double t_end = Q * T;
  CompensatedSum acc;
  for (i64 m = Qi; static_cast<double>(m) < t_end; ++m) {
    const double lo = static_cast<double>(m);
    const double hi = std::min(static_cast<double>(m + 1), t_end);
    const double D = static_cast<double>(counts[m]);
    auto g = [&](double t) { return D - main(t); };
    auto f = [&](double t) { return std::pow(std::abs(g(t)), A); };
    // g decreases in t; a zero in [a, b] shows up as g(a) > 0 >= g(b).
    auto zero_in = [&](double a, double b) {
      if (!(g(a) > 0.0 && g(b) <= 0.0)) return std::numeric_limits<double>::quiet_NaN();
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        (g(mid) > 0.0 ? a : b) = mid;
      }
      return 0.5 * (a + b);
    };
    auto anchored = [&](double root, double w, double dir) {
      return root_weighted_integral(g, root, w, dir, A, order);
    };

    const double root = zero_in(lo, hi);
    if (A == std::floor(A)) {
      // Integer powers are smooth on each side of a sign change.
      if (std::isnan(root)) {
        acc.add(gauss_legendre(f, lo, hi, order));
      } else {
        acc.add(gauss_legendre(f, lo, root, order) + gauss_legendre(f, root, hi, order));
      }
      continue;
    }
    // Otherwise |t - root|^A limits Gauss-Legendre even when the zero is
    // just outside the interval; integrate from the zero instead.
    const double reach = 3.0 * (hi - lo);
    if (!std::isnan(root)) {
      acc.add(anchored(root, root - lo, -1.0) + anchored(root, hi - root, 1.0));
    } else if (const double left = zero_in(lo - reach, lo); !std::isnan(left)) {
      acc.add(anchored(left, hi - left, 1.0) - anchored(left, lo - left, 1.0));
    } else if (const double right = zero_in(hi, hi + reach); !std::isnan(right)) {
      acc.add(anchored(right, right - lo, -1.0) - anchored(right, right - hi, -1.0));
    } else {
      acc.add(gauss_legendre(f, lo, hi, order));
    }
  }
  return acc.value() / Q;
}

double moment_main_term(double T, int k, i64 modulus_product, double B) {
  const double Q = static_cast<double>(modulus_product);
  if (k == 2) {
    const double power_integral = (std::pow(T, 1.5) - 1.0) / 1.5;
    return Q * Q / (64.0 * kPi * kPi) * B * power_integral;
  }
  if (k >= 3) {
    const double e = 1.0 + k / 4.0;
    const double power_integral = (std::pow(T, e) - 1.0) / e;
    return ipow(Q, k) / (std::pow(2.0, 3.5 * k - 1.0) * ipow(kPi, k)) * B * power_integral;
  }
  throw std::invalid_argument("moment_main_term: k must be >= 2");
}

MomentReport moment_report(const StepSeries& series, double T, int k, const PhasePair& phases,
                           double B) {
  if (k < 1 || k > 4) throw std::invalid_argument("moment_report: k must be in 1..4");
  MomentReport r;
  r.T = T;
  r.order = k;
  r.empirical = integrate_weighted_power(series, T, k);
  if (k == 1) {
    r.main_term = 0.0;
    r.ratio = std::abs(r.empirical) / (static_cast<double>(phases.modulus_product()) * std::pow(T, 0.75));
    r.notes = "mean-value bound ratio |int S| / (q1 q2 T^{3/4})";
    return r;
  }
  r.B_used = B;
  r.main_term = moment_main_term(T, k, phases.modulus_product(), B);
  r.ratio = r.main_term != 0.0 ? r.empirical / r.main_term : 0.0;
  r.notes = "empirical / main term";
  return r;
}

MomentReport moment_report(double T, int k, const PhasePair& phases, i64 y_for_B) {
  check_T(T);
  if (k < 1 || k > 4) throw std::invalid_argument("moment_report: k must be in 1..4");
  const StepSeries series = weighted_sum_steps(steps_needed(T, phases.modulus_product()), phases);
  double B = 0.0;
  if (k == 2) {
    B = mean_square_constant(phases, y_for_B).value;
  } else if (k > 2) {
    B = moment_constant(k, phases, y_for_B).value;
  }
  MomentReport r = moment_report(series, T, k, phases, B);
  if (k >= 2) r.notes += "; B head y=" + std::to_string(y_for_B);
  return r;
}

ErrorGrid ErrorGrid::build(double T, const CongruenceSpec& spec) {
  check_T(T);
  const i64 Qi = spec.modulus_product();
  const double Q = static_cast<double>(Qi);
  const i64 m_hi = static_cast<i64>(std::floor(Q * T)) - 1;
  const i64 m_lo = static_cast<i64>(std::ceil(Q * T / 2.0));
  if (m_hi + 1 > kDefaultStepBudget) throw BudgetExceeded("ErrorGrid: q1 q2 T over budget");
  const auto counts = congruence_step_counts(m_hi + 1, spec);
  ErrorGrid g;
  for (i64 m = std::max(m_lo, Qi); m <= m_hi; ++m) {
    const double t = static_cast<double>(m) + 0.5;
    g.x.push_back(t / Q);
    g.abs_delta.push_back(
        std::abs(static_cast<double>(counts[m]) - congruence_main_term(t, spec)));
  }
  return g;
}

double ErrorGrid::max_abs() const {
  return abs_delta.empty() ? 0.0 : *std::max_element(abs_delta.begin(), abs_delta.end());
}

CensusReport large_value_census(const ErrorGrid& grid, double V, double spacing) {
  if (!(V > 0.0)) throw std::invalid_argument("census: V must be > 0");
  if (!(spacing >= V)) throw std::invalid_argument("census: spacing must be >= V");
  CensusReport r;
  r.V = V;
  r.spacing = spacing;
  for (size_t i = 0; i < grid.x.size(); ++i) {
    if (grid.abs_delta[i] < V) continue;
    if (!r.points.empty() && grid.x[i] - r.points.back() < spacing) continue;
    r.points.push_back(grid.x[i]);
  }
  r.M = static_cast<i64>(r.points.size());
  return r;
}

CensusReport large_value_census(double T, double V, double spacing, const CongruenceSpec& spec) {
  return large_value_census(ErrorGrid::build(T, spec), V, spacing);
}

GrowthFit fit_growth_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw std::invalid_argument("fit_growth_exponent: need >= 3 samples");
  std::vector<double> lx, ly;
  for (auto [T, v] : samples) {
    if (!(T > 0.0) || !(v > 0.0)) throw std::invalid_argument("fit_growth_exponent: values must be positive");
    lx.push_back(std::log(T));
    ly.push_back(std::log(v));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_growth_exponent: T values must differ");
  GrowthFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    ss += r * r;
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

OscillatoryCheck oscillatory_integral(double a, double b, double A, double B, double k) {
  if (!(b > a) || !(a > 1.0)) throw std::invalid_argument("oscillatory_integral: need b > a > 1");
  if (A == 0.0) throw std::invalid_argument("oscillatory_integral: A must be nonzero");
  // t = u^2 turns the phase linear: int 2 u^{1 + k/2} cos(A u + B) du.
  const double ua = std::sqrt(a), ub = std::sqrt(b);
  auto f = [&](double u) { return 2.0 * std::pow(u, 1.0 + 0.5 * k) * std::cos(A * u + B); };
  const double period = 2.0 * kPi / std::abs(A);
  const i64 panels = std::max<i64>(1, static_cast<i64>(std::ceil((ub - ua) / period)));
  const double h = (ub - ua) / static_cast<double>(panels);
  CompensatedSum acc;
  for (i64 p = 0; p < panels; ++p) {
    const double lo = ua + h * static_cast<double>(p);
    const double hi = p + 1 == panels ? ub : lo + h;
    acc.add(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 8, 1e-13));
  }
  OscillatoryCheck out;
  out.value = acc.value();
  out.bound = std::pow(b, 0.25 * k) * (ub + ua) / std::abs(A);
  out.slack = std::abs(out.value) / out.bound;
  return out;
}

double integrate_spike_diagnostic(double T, double H, const PhasePair& phases, i64 samples) {
  check_T(T);
  if (samples < 1) throw std::invalid_argument("integrate_spike_diagnostic: samples must be >= 1");
  const double lo = T / 2.0, h = (T - lo) / static_cast<double>(samples);
  CompensatedSum acc;
  for (i64 i = 0; i < samples; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * h;
    acc.add(spike_diagnostic(x, H, T, phases, TailKind::k12) +
            spike_diagnostic(x, H, T, phases, TailKind::k21));
  }
  return acc.value() * h;
}

ResidualReport voronoi_residual(const StepSeries& series, double T, double y, const PhasePair& phases) {
  check_T(T);
  const i64 Qi = phases.modulus_product();
  const double Q = static_cast<double>(Qi);
  const CoefficientTable table(static_cast<i64>(std::floor(y)), phases);
  const VoronoiHead head(table, y);
  const double top_freq = 2.0 * std::sqrt(std::max(y, 1.0));  // cycles per unit sqrt(x)

  CompensatedSum residual;
  const double t_end = Q * T;
  for (i64 m = Qi; static_cast<double>(m) < t_end; ++m) {
    const double x0 = static_cast<double>(m) / Q;
    const double x1 = std::min(static_cast<double>(m + 1), t_end) / Q;
    const double s = series.on_interval(m);
    const double cycles = top_freq * (std::sqrt(x1) - std::sqrt(x0));
    const i64 panels = std::max<i64>(1, static_cast<i64>(std::ceil(cycles)));
    const int order = cycles < 0.25 ? 4 : 6;
    const double h = (x1 - x0) / static_cast<double>(panels);
    auto f = [&](double x) {
      const double d = s - head(x);
      return d * d;
    };
    for (i64 p = 0; p < panels; ++p) {
      const double lo = x0 + h * static_cast<double>(p);
      residual.add(gauss_legendre(f, lo, p + 1 == panels ? x1 : lo + h, order));
    }
  }
  ResidualReport r;
  r.y = y;
  r.residual = residual.value();
  r.total = integrate_steps_power(series, 1.0, T, 2);
  r.ratio = r.residual / r.total;
  return r;
}

}  // namespace wdiv

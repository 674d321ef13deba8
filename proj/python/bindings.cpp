#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wdiv/congruence.hpp"
#include "wdiv/constants.hpp"
#include "wdiv/moments.hpp"
#include "wdiv/voronoi.hpp"
#include "wdiv/weighted_sum.hpp"

namespace py = pybind11;
using namespace wdiv;

namespace {

PhasePair phases(i64 a1, i64 q1, i64 a2, i64 q2) { return {RationalPhase(a1, q1), RationalPhase(a2, q2)}; }

}  // namespace

PYBIND11_MODULE(_wdiv, m) {
  m.doc() = "Weighted divisor sums and congruence divisor problems";
  m.attr("__version__") = WDIV_VERSION;
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("psi", &psi_frac, py::arg("t"));
  m.def("digamma_rational", &digamma_rational, py::arg("a"), py::arg("q"));

  m.def(
      "congruence_divisor_count",
      [](i64 n, i64 r1, i64 q1, i64 r2, i64 q2) { return congruence_divisor_count(n, CongruenceSpec(r1, q1, r2, q2)); },
      py::arg("n"), py::arg("r1"), py::arg("q1"), py::arg("r2"), py::arg("q2"));
  m.def(
      "congruence_summatory",
      [](double x, i64 r1, i64 q1, i64 r2, i64 q2, bool brute) {
        return congruence_summatory(x, CongruenceSpec(r1, q1, r2, q2), brute ? CountMode::brute : CountMode::hyperbola)
            .value();
      },
      py::arg("x"), py::arg("r1"), py::arg("q1"), py::arg("r2"), py::arg("q2"), py::arg("brute") = false);
  m.def(
      "congruence_main_term",
      [](double x, i64 r1, i64 q1, i64 r2, i64 q2, bool allow_below_modulus) {
        return congruence_main_term(x, CongruenceSpec(r1, q1, r2, q2),
                                    allow_below_modulus ? RangePolicy::allow_below_modulus : RangePolicy::strict);
      },
      py::arg("x"), py::arg("r1"), py::arg("q1"), py::arg("r2"), py::arg("q2"), py::arg("allow_below_modulus") = false);
  m.def(
      "congruence_error",
      [](double x, i64 r1, i64 q1, i64 r2, i64 q2) { return congruence_error(x, CongruenceSpec(r1, q1, r2, q2)).delta; },
      py::arg("x"), py::arg("r1"), py::arg("q1"), py::arg("r2"), py::arg("q2"));

  m.def(
      "weighted_sum",
      [](double t, i64 a1, i64 q1, i64 a2, i64 q2) { return weighted_sum_direct(t, phases(a1, q1, a2, q2)); },
      py::arg("t"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"));
  m.def(
      "weighted_sum_via_error_terms",
      [](double x, i64 a1, i64 q1, i64 a2, i64 q2) { return weighted_sum_via_error_terms(x, phases(a1, q1, a2, q2)); },
      py::arg("x"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"));
  m.def(
      "weighted_sum_steps",
      [](i64 n_max, i64 a1, i64 q1, i64 a2, i64 q2) {
        const StepSeries s = weighted_sum_steps(n_max, phases(a1, q1, a2, q2));
        return py::make_tuple(s.t_min, s.values);
      },
      py::arg("n_max"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"),
      "(t_min, values): values[j] is S on the open interval (t_min + j, t_min + j + 1).");

  m.def(
      "voronoi_coefficient",
      [](i64 n, i64 a1, i64 q1, i64 a2, i64 q2) { return voronoi_coefficient(n, phases(a1, q1, a2, q2)); },
      py::arg("n"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"));
  m.def(
      "voronoi_head",
      [](double x, double y, i64 a1, i64 q1, i64 a2, i64 q2) { return voronoi_head(x, y, phases(a1, q1, a2, q2)); },
      py::arg("x"), py::arg("y"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"));

  m.def(
      "series_constant",
      [](int k, i64 y, i64 a1, i64 q1, i64 a2, i64 q2) {
        const PhasePair p = phases(a1, q1, a2, q2);
        const SeriesConstant c = k == 2 ? mean_square_constant(p, y) : moment_constant(k, p, y);
        return py::make_tuple(c.value, c.tail_envelope);
      },
      py::arg("k"), py::arg("y"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"),
      "(head, tail_envelope) of B_k truncated at y; k in 2..4.");

  m.def(
      "moment",
      [](double T, int k, i64 a1, i64 q1, i64 a2, i64 q2, i64 y) {
        const MomentReport r = moment_report(T, k, phases(a1, q1, a2, q2), y);
        py::dict d;
        d["T"] = r.T;
        d["k"] = k;
        d["empirical"] = r.empirical;
        d["main_term"] = r.main_term;
        d["ratio"] = r.ratio;
        d["B_used"] = r.B_used;
        return d;
      },
      py::arg("T"), py::arg("k"), py::arg("a1"), py::arg("q1"), py::arg("a2"), py::arg("q2"), py::arg("y") = 100000);
  m.def(
      "error_abs_power_integral",
      [](double T, double A, i64 r1, i64 q1, i64 r2, i64 q2) {
        return integrate_error_abs_power(T, A, CongruenceSpec(r1, q1, r2, q2));
      },
      py::arg("T"), py::arg("A"), py::arg("r1"), py::arg("q1"), py::arg("r2"), py::arg("q2"));
  m.def(
      "census",
      [](double T, double V, double spacing, i64 r1, i64 q1, i64 r2, i64 q2) {
        return large_value_census(T, V, spacing, CongruenceSpec(r1, q1, r2, q2)).M;
      },
      py::arg("T"), py::arg("V"), py::arg("spacing"), py::arg("r1"), py::arg("q1"), py::arg("r2"), py::arg("q2"));
}

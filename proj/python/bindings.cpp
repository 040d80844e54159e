#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qplab/almost_periods.hpp"
#include "qplab/dimension.hpp"
#include "qplab/diophantine.hpp"
#include "qplab/error.hpp"

namespace py = pybind11;
using namespace qplab;

namespace {

// Reals arrive as str (exact literal or named constant) or float.
Real to_real(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_real_expression(h.cast<std::string>());
  return Real(h.cast<double>());
}

std::vector<Real> to_reals(const py::iterable& xs) {
  std::vector<Real> out;
  for (const auto& x : xs) out.push_back(to_real(x));
  return out;
}

std::string big(const BigInt& x) { return x.str(); }

QuasiperiodicSignal to_signal(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_signal_spec(h.cast<std::string>());
  return h.cast<QuasiperiodicSignal>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Almost periods and hull dimensions of quasiperiodic signals";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
    }
  });

  py::class_<QuasiperiodicSignal>(m, "Signal")
      .def(py::init([](const std::string& spec) { return parse_signal_spec(spec); }), py::arg("spec"))
      .def(py::init([](const std::vector<std::complex<double>>& amplitudes, const py::iterable& exponents) {
             const auto lambda = to_reals(exponents);
             if (lambda.size() != amplitudes.size())
               throw Error(ErrorKind::DimensionMismatch, "amplitudes and exponents differ in length");
             std::vector<Term> terms;
             for (std::size_t j = 0; j < lambda.size(); ++j) terms.push_back({amplitudes[j], lambda[j]});
             return QuasiperiodicSignal(std::move(terms));
           }),
           py::arg("amplitudes"), py::arg("exponents"))
      .def_property_readonly("name", &QuasiperiodicSignal::name)
      .def_property_readonly("amplitudes",
                             [](const QuasiperiodicSignal& f) {
                               std::vector<std::complex<double>> a;
                               for (const auto& t : f.terms()) a.push_back(t.amplitude);
                               return a;
                             })
      .def_property_readonly("exponents",
                             [](const QuasiperiodicSignal& f) {
                               std::vector<double> l;
                               for (const auto& t : f.terms()) l.push_back(static_cast<double>(t.exponent));
                               return l;
                             })
      .def("__len__", &QuasiperiodicSignal::size)
      .def("__call__", [](const QuasiperiodicSignal& f, double t) { return evaluate(f, t); })
      .def("__repr__", [](const QuasiperiodicSignal& f) { return "Signal('" + f.name() + "')"; });

  m.def("preset_names", &preset_names);
  m.def("translation_distance", [](const py::handle& f, double tau) { return translation_distance(to_signal(f), tau); },
        py::arg("signal"), py::arg("tau"));
  m.def("lipschitz_constant", [](const py::handle& f) { return lipschitz_constant(to_signal(f)); });
  m.def(
      "sup_oracle",
      [](const py::handle& f, double tau, double horizon, double step) {
        return sup_oracle(to_signal(f), tau, horizon, step);
      },
      py::arg("signal"), py::arg("tau"), py::arg("horizon"), py::arg("step"));

  m.def(
      "sublevel_scan",
      [](const py::handle& h, double eps, double lo, double hi, double step) {
        const auto f = to_signal(h);
        const auto s = sublevel_scan(f, eps, {lo, hi}, step > 0 ? step : max_certified_step(f, eps));
        const auto pairs = [](const std::vector<Interval>& v) {
          std::vector<std::pair<double, double>> out;
          for (const auto& iv : v) out.emplace_back(iv.lo, iv.hi);
          return out;
        };
        py::dict d;
        d["inner"] = pairs(s.inner);
        d["outer"] = pairs(s.outer);
        d["step"] = s.step;
        if (!s.outer.empty()) {
          const auto L = inclusion_length(s);
          d["L_lower"] = L.lower;
          d["L_upper"] = L.upper;
        }
        return d;
      },
      py::arg("signal"), py::arg("eps"), py::arg("lo"), py::arg("hi"), py::arg("step") = 0.0);

  m.def(
      "length_curve",
      [](const py::handle& h, const std::vector<double>& eps) {
        const auto curve = length_curve(to_signal(h), eps);
        py::list rows;
        for (const auto& s : curve.samples) {
          py::dict d;
          d["eps"] = s.eps;
          d["L_lower"] = s.L_lower;
          d["L_upper"] = s.L_upper;
          d["window"] = s.window;
          d["resolved"] = s.resolved;
          rows.append(d);
        }
        py::dict out;
        out["samples"] = rows;
        try {
          const auto fit = fit_exponent(curve);
          out["slope"] = fit.slope;
          out["intercept"] = fit.intercept;
        } catch (const Error&) {
          out["slope"] = py::none();
          out["intercept"] = py::none();
        }
        return out;
      },
      py::arg("signal"), py::arg("eps"));

  m.def(
      "cf_expand",
      [](const std::string& x, int depth, unsigned bits) {
        const auto enc = enclose_literal(x, bits);
        const auto cf = enc.lo == enc.hi ? cf_expand(enc.lo, depth) : cf_expand(enc, depth);
        std::vector<py::int_> quotients{py::int_(py::str(big(cf.a0)))};
        for (const auto& a : cf.quotients) quotients.emplace_back(py::str(big(a)));
        std::vector<std::pair<py::int_, py::int_>> conv;
        for (const auto& c : cf.convergents) conv.emplace_back(py::int_(py::str(big(c.p))), py::int_(py::str(big(c.q))));
        py::dict d;
        d["quotients"] = quotients;
        d["convergents"] = conv;
        d["terminated"] = cf.terminated;
        return d;
      },
      py::arg("x"), py::arg("depth") = 30, py::arg("precision_bits") = 256);

  m.def(
      "badness_score",
      [](const py::iterable& alpha, std::uint64_t Q) {
        const auto r = badness_score(to_reals(alpha), Q);
        return py::make_tuple(r.score, r.argmin_q);
      },
      py::arg("alpha"), py::arg("Q"));
  m.def(
      "best_simultaneous_denominator",
      [](const py::iterable& alpha, double delta, std::uint64_t q_max) {
        return best_simultaneous_denominator(to_reals(alpha), delta, q_max);
      },
      py::arg("alpha"), py::arg("delta"), py::arg("q_max"));
  m.def(
      "kronecker_solve",
      [](const py::iterable& lambda, const py::iterable& kappa, double eps, double t_max) -> py::object {
        const auto sol = kronecker_solve(to_reals(lambda), to_reals(kappa), eps, t_max);
        if (!sol) return py::none();
        return py::make_tuple(sol->t, sol->residuals);
      },
      py::arg("lam"), py::arg("kappa"), py::arg("eps"), py::arg("t_max"));
  m.def(
      "kronecker_residuals",
      [](const py::iterable& lambda, const py::iterable& kappa, double t) {
        return kronecker_residuals(to_reals(lambda), to_reals(kappa), t);
      },
      py::arg("lam"), py::arg("kappa"), py::arg("t"));

  m.def(
      "orbit_angles", [](const py::handle& f, double s) { return orbit_angles(to_signal(f), s).angles; },
      py::arg("signal"), py::arg("s"));
  m.def(
      "hull_metric",
      [](const py::handle& f, std::vector<double> x, std::vector<double> y) {
        return hull_metric(to_signal(f), TorusPoint(std::move(x)), TorusPoint(std::move(y)));
      },
      py::arg("signal"), py::arg("x"), py::arg("y"));
  m.def(
      "hull_dimension",
      [](const py::handle& f, const std::vector<double>& eps) {
        const auto r = torus_covering_report(HullMetric(to_signal(f)), eps);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
        for (const auto& c : r.counts) counts.emplace_back(c.cover_upper, c.packing_lower);
        py::dict d;
        d["counts"] = counts;
        d["lower_dim"] = r.lower_dim;
        d["upper_dim"] = r.upper_dim;
        return d;
      },
      py::arg("signal"), py::arg("eps"));
  m.def(
      "equivalence_constants",
      [](const py::handle& f, std::size_t n, std::uint64_t seed) {
        const auto c = equivalence_constants(to_signal(f), n, seed);
        return py::make_tuple(c.c1, c.c2);
      },
      py::arg("signal"), py::arg("samples") = 10000, py::arg("seed") = 7);
}

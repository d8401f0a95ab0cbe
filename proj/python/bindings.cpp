#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lpfourier/analysis.hpp"
#include "lpfourier/ap_integration.hpp"
#include "lpfourier/catalog.hpp"
#include "lpfourier/cli.hpp"
#include "lpfourier/constants.hpp"
#include "lpfourier/lp_norm.hpp"
#include "lpfourier/psif.hpp"

namespace py = pybind11;
using namespace lpf;

namespace {

py::dict equality_dict(const EqualityReport& e) {
  py::dict d;
  d["lhs"] = e.lhs;
  d["rhs"] = e.rhs;
  d["abs_diff"] = e.abs_diff;
  d["budget"] = e.budget;
  d["lhs_error"] = e.lhs_error;
  d["rhs_error"] = e.rhs_error;
  d["bound"] = e.bound;
  d["converged"] = e.converged;
  d["pass"] = e.pass;
  return d;
}

std::string table_csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fourier transforms of L^p functions through the primitive Psi_f";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> hypothesis_error;
  hypothesis_error.call_once_and_store_result(
      [&]() { return py::exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError); });
  // args are (hypothesis name, full message)
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HypothesisError& e) {
      py::tuple args = py::make_tuple(e.hypothesis(), std::string(e.what()));
      PyErr_SetObject(hypothesis_error.get_stored().ptr(), args.ptr());
    }
  });

  py::class_<QuadratureResult>(m, "QuadratureResult")
      .def_readonly("value", &QuadratureResult::value)
      .def_readonly("abs_error_estimate", &QuadratureResult::abs_error_estimate)
      .def_readonly("converged", &QuadratureResult::converged)
      .def("__repr__", [](const QuadratureResult& r) {
        std::ostringstream os;
        os << "QuadratureResult(value=" << r.value << ", err=" << r.abs_error_estimate
           << ", converged=" << (r.converged ? "True" : "False") << ")";
        return os.str();
      });

  m.def("catalog", [] {
    std::vector<std::string> names;
    for (const auto& e : catalog_entries()) names.push_back(e.name);
    return names;
  }, "Names of the test-function catalog.");
  m.def("bv_catalog", [] {
    std::vector<std::string> names;
    for (const auto& e : bv_entries()) names.push_back(e.name);
    return names;
  }, "Names of the bounded-variation catalog.");

  m.def("psif", [](const std::string& f, double s, double tol) { return psif(builtin_spec(f), s, tol); },
        py::arg("f"), py::arg("s"), py::arg("tol") = 1e-10, py::call_guard<py::gil_scoped_release>());
  m.def(
      "psif_grid",
      [](const std::string& f, std::vector<double> s, double p, double tol) {
        const PsifSamples r = sample_psif(builtin_spec(f), p, std::move(s), tol);
        return std::make_tuple(r.grid, r.values, r.errors);
      },
      py::arg("f"), py::arg("s"), py::arg("p") = 2.0, py::arg("tol") = 1e-10,
      py::call_guard<py::gil_scoped_release>(), "(sorted s, values, error estimates)");
  m.def("lp_norm", [](const std::string& f, double p, double rel_tol) { return lp_norm(builtin_spec(f), p, rel_tol); },
        py::arg("f"), py::arg("p"), py::arg("rel_tol") = 1e-10, py::call_guard<py::gil_scoped_release>());

  m.def("cq", [](double q, double tol) {
    const ConstantValue c = cq(q, tol);
    return std::make_pair(c.value, c.abs_error_estimate);
  }, py::arg("q"), py::arg("tol") = 1e-10, "(C_q, error estimate)");
  m.def("bq", &bq, py::arg("q"));
  m.def("compare_constants", [](double q, double tol) {
    const ConstantReport c = compare_constants(q, tol);
    py::dict d;
    d["q"] = c.q;
    d["c_q"] = c.c_q;
    d["c_q_err"] = c.c_q_error;
    d["b_q"] = c.b_q;
    d["diff"] = c.difference;
    d["sign"] = c.sign_of_difference;
    return d;
  }, py::arg("q"), py::arg("tol") = 1e-10);

  m.def("integrate_line",
        [](const std::string& f, const std::string& g, double p, double tol) {
          return integrate_fhat_g_line(builtin_spec(f), bv_builtin_spec(g), p, tol);
        },
        py::arg("f"), py::arg("g"), py::arg("p"), py::arg("tol") = 1e-8, py::call_guard<py::gil_scoped_release>(),
        "int fhat g over the line, by parts against Psi_f.");
  m.def("integrate_finite",
        [](const std::string& f, const std::string& g, double a, double b, double tol) {
          return integrate_fhat_g_finite(builtin_spec(f), bv_builtin_spec(g), a, b, tol);
        },
        py::arg("f"), py::arg("g"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-8,
        py::call_guard<py::gil_scoped_release>());

  m.def("exchange_check",
        [](const std::string& f, const std::string& g, double p, double tol) {
          EqualityReport e;
          {
            py::gil_scoped_release nogil;
            e = exchange_check(builtin_spec(f), bv_builtin_spec(g), p, tol);
          }
          return equality_dict(e);
        },
        py::arg("f"), py::arg("g"), py::arg("p") = 2.0, py::arg("tol") = 1e-6);

  m.def("kernel_hypotheses", [](const std::string& kernel, double a, double p) {
    const InversionHypotheses h = inversion_hypotheses(make_kernel(parse_kernel(kernel), a), p);
    py::dict d;
    d["mass"] = h.mass;
    d["moment"] = h.moment;
    d["derivative_moment"] = h.derivative_moment;
    d["all"] = h.all();
    d["failures"] = h.failures();
    return d;
  }, py::arg("kernel"), py::arg("a"), py::arg("p") = 1.0);
  m.def("invert",
        [](const std::string& f, const std::string& kernel, double x, double a, double p, bool stieltjes) {
          return inversion_apply(builtin_spec(f), make_kernel(parse_kernel(kernel), a), x,
                                 stieltjes ? InversionRoute::Stieltjes : InversionRoute::Convolution, p);
        },
        py::arg("f"), py::arg("kernel"), py::arg("x"), py::arg("a"), py::arg("p") = 2.0, py::arg("stieltjes") = false,
        py::call_guard<py::gil_scoped_release>(), "(f * psi_a)(x) by either route.");
  m.def("inversion_sweep",
        [](const std::string& f, const std::string& kernel, double p, const std::vector<double>& a) {
          std::vector<std::tuple<double, double, double, bool>> out;
          {
            py::gil_scoped_release nogil;
            for (const SweepRow& r : inversion_sweep(builtin_spec(f), parse_kernel(kernel), p, a))
              out.emplace_back(r.a, r.distance, r.abs_error_estimate, r.converged);
          }
          return out;
        },
        py::arg("f"), py::arg("kernel"), py::arg("p"), py::arg("a"), "[(a, distance, error, converged)]");

  m.def("properties", [](const std::string& f) {
    const PropositionReport r = proposition_checker(builtin_spec(f));
    py::dict d;
    d["derivative_lp"] = r.derivative_lp;
    d["moment_derivative_lp"] = r.moment_derivative_lp;
    d["derivative_bv"] = r.derivative_bv;
    d["moment_derivative_bv"] = r.moment_derivative_bv;
    d["fhat_in_l1"] = r.fhat_in_l1;
    d["fhat_in_bv"] = r.fhat_in_bv;
    d["closed_form_bv"] = r.closed_form_bv;
    d["sufficient_only"] = r.sufficient_only;
    d["triggered"] = r.triggered;
    return d;
  }, py::arg("f"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("subcommand", &RunConfig::subcommand)
      .def_readwrite("tol", &RunConfig::tol)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("qgrid", &RunConfig::qgrid)
      .def_readwrite("sgrid", &RunConfig::sgrid)
      .def_readwrite("alist", &RunConfig::alist)
      .def_readwrite("f", &RunConfig::f)
      .def_readwrite("g", &RunConfig::g)
      .def_readwrite("g2", &RunConfig::g2)
      .def_readwrite("kernel", &RunConfig::kernel)
      .def_readwrite("p", &RunConfig::p)
      .def_readwrite("thm", &RunConfig::thm)
      .def_readwrite("range", &RunConfig::range);
  m.def("execute",
        [](const RunConfig& cfg) {
          RunResult r;
          {
            py::gil_scoped_release nogil;
            r = execute(cfg);
          }
          return std::make_tuple(table_csv(r.table), r.pass, r.messages);
        },
        py::arg("config"), "Run one CLI subcommand: (csv text, pass, messages).");
}

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hhbound/bounds.hpp"
#include "hhbound/convexity.hpp"
#include "hhbound/core.hpp"
#include "hhbound/harness.hpp"
#include "hhbound/quadrature.hpp"
#include "hhbound/registry.hpp"
#include "hhbound/report.hpp"

namespace py = pybind11;
using namespace hhbound;

namespace {

ProofIntegralId parse_proof_integral(const std::string& name) {
  for (ProofIntegralId id : kAllProofIntegrals) {
    if (to_string(id) == name) return id;
  }
  throw InvalidArgument("unknown proof integral id '" + name + "'");
}

py::dict summary(const SuiteResult& r) {
  py::dict d;
  d["reports"] = r.reports.size();
  d["violations"] = r.violations;
  d["hypothesis_rejections"] = r.hypothesis_rejections;
  d["errors"] = r.errors.size();
  d["max_tightness"] = r.max_tightness;
  d["min_tightness"] = r.min_tightness;
  d["wall_time"] = r.wall_time.count();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hhbound, m) {
  m.doc() = "Weighted trapezoid / midpoint error bounds for (alpha, m)-convex functions";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Interval>(m, "Interval")
      .def(py::init(&make_interval), py::arg("a"), py::arg("b"))
      .def_readonly("a", &Interval::a)
      .def_readonly("b", &Interval::b)
      .def("__repr__", [](const Interval& iv) {
        return "Interval(" + format_real(iv.a) + ", " + format_real(iv.b) + ")";
      });
  m.def("make_interval", &make_interval, py::arg("a"), py::arg("b"));

  py::class_<RealFunction>(m, "Function")
      .def(py::init(&parse_function), py::arg("spec"))
      .def("__call__", &RealFunction::operator())
      .def_property_readonly("spec", &RealFunction::spec)
      .def("derivative", [](const RealFunction& f) { return derivative(f); })
      .def("__repr__", [](const RealFunction& f) { return "Function('" + f.spec() + "')"; });
  m.def("family_ids", &family_ids);

  py::class_<IntegralResult>(m, "IntegralResult")
      .def_readonly("value", &IntegralResult::value)
      .def_readonly("error_estimate", &IntegralResult::error_estimate)
      .def_readonly("evaluations", &IntegralResult::evaluations);

  m.def(
      "integrate",
      [](const std::function<double(double)>& f, double a, double b,
         double abs_tol, double rel_tol) {
        return integrate(f, a, b, abs_tol, rel_tol);
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("abs_tol") = 1e-10,
      py::arg("rel_tol") = 1e-10);
  m.def(
      "integrate_function",
      [](const RealFunction& f, const Interval& iv, double abs_tol,
         double rel_tol) { return integrate(f, iv, abs_tol, rel_tol); },
      py::arg("f"), py::arg("interval"), py::arg("abs_tol") = 1e-10,
      py::arg("rel_tol") = 1e-10);
  m.def("sup_norm", &sup_norm, py::arg("g"), py::arg("interval"));
  m.def("kernel_K", &kernel_K, py::arg("g"), py::arg("interval"), py::arg("x"),
        py::arg("t"));
  m.def(
      "step_weight",
      [](const RealFunction& g, const Interval& iv, double x, double t) {
        const StepWeight sw = step_weight(g, iv, x, t);
        return py::make_tuple(sw.sg, sw.s);
      },
      py::arg("g"), py::arg("interval"), py::arg("x"), py::arg("t"));

  m.def("constant_M", &constant_M, py::arg("interval"), py::arg("x"), py::arg("alpha"));
  m.def("constant_A", &constant_A, py::arg("interval"), py::arg("x"), py::arg("alpha"));
  m.def(
      "proof_integral",
      [](const std::string& id, const Interval& iv, double x, double alpha) {
        return proof_integral(parse_proof_integral(id), iv, x, alpha);
      },
      py::arg("id"), py::arg("interval"), py::arg("x"), py::arg("alpha"));

  py::class_<Witness>(m, "Witness")
      .def_readonly("x", &Witness::x)
      .def_readonly("y", &Witness::y)
      .def_readonly("t", &Witness::t)
      .def_readonly("gap", &Witness::gap);
  py::class_<Verdict>(m, "Verdict")
      .def_readonly("holds", &Verdict::holds)
      .def_readonly("witness", &Verdict::witness);
  m.def(
      "check_alpha_m_convex",
      [](const RealFunction& f, double b_star, double alpha, double mm, int n) {
        return check_alpha_m_convex(f, make_domain(b_star), {alpha, mm}, {n, n, n});
      },
      py::arg("f"), py::arg("b_star"), py::arg("alpha"), py::arg("m"),
      py::arg("grid") = 51);
  m.def(
      "check_hh",
      [](const RealFunction& f, const Interval& iv) {
        const HermiteHadamard hh = check_hh(f, iv);
        py::dict d;
        d["holds"] = hh.holds;
        d["lower"] = hh.lower;
        d["mean"] = hh.mean;
        d["upper"] = hh.upper;
        return d;
      },
      py::arg("f"), py::arg("interval"));

  py::class_<BoundCase>(m, "BoundCase")
      .def_readonly("x", &BoundCase::x)
      .def_readonly("q", &BoundCase::q)
      .def_readonly("g_sup", &BoundCase::g_sup)
      .def_readonly("interval", &BoundCase::interval);
  m.def(
      "build_case",
      [](const RealFunction& f, const RealFunction& g, const Interval& iv,
         double x, double q, double alpha, double mm, double b_star) {
        return build_case(f, g, iv, b_star, x, q, {alpha, mm});
      },
      py::arg("f"), py::arg("g"), py::arg("interval"), py::arg("x"),
      py::arg("q") = 1.0, py::arg("alpha") = 1.0, py::arg("m") = 1.0,
      py::arg("b_star") = 1.0);

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("theorem_id",
                             [](const BoundReport& r) { return std::string(to_string(r.theorem)); })
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("slack", &BoundReport::slack)
      .def_readonly("tightness", &BoundReport::tightness)
      .def_readonly("holds", &BoundReport::holds);

  m.def(
      "verify_case",
      [](const BoundCase& c, const std::string& theorem) -> std::optional<BoundReport> {
        return verify_case(c, parse_theorem(theorem)).report;
      },
      py::arg("case"), py::arg("theorem"));
  m.def(
      "bound",
      [](const BoundCase& c, const std::string& theorem) {
        return bound_for(parse_theorem(theorem), c);
      },
      py::arg("case"), py::arg("theorem"));
  m.def("lhs_endpoint", [](const BoundCase& c) { return lhs_endpoint(c).value; });
  m.def("lhs_point", [](const BoundCase& c) { return lhs_point(c).value; });
  m.def("residual_lemma11", [](const BoundCase& c) { return residual_lemma11(c).value; });
  m.def("residual_lemma12", [](const BoundCase& c) { return residual_lemma12(c).value; });
  m.def("reduction_check", &reduction_check, py::arg("interval"),
        py::arg("n_cases") = 100, py::arg("seed") = 1);

  m.def(
      "run_suite",
      [](const std::string& config_json, bool write) {
        const SuiteConfig config = config_from_json(nlohmann::json::parse(config_json));
        const SuiteResult result = write ? run_and_write(config) : run_suite(config);
        return summary(result);
      },
      py::arg("config_json"), py::arg("write") = false);
}

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nsbayes/cli.hpp"
#include "nsbayes/json_io.hpp"

namespace py = pybind11;
using namespace nsbayes;

namespace {

std::string dump(const io::Json& j) { return j.dump(); }

std::string classify_json(const std::string& problem, const std::string& procedures) {
  const FiniteProblem p = io::problem_from_json(io::Json::parse(problem));
  io::Json out = io::Json::array();
  for (const auto& d : io::procedures_from_json(io::Json::parse(procedures), p)) out.push_back(io::to_json(classify(p, d)));
  return dump(out);
}

std::string synthesize_json(const std::string& problem, const std::string& procedure) {
  const FiniteProblem p = io::problem_from_json(io::Json::parse(problem));
  const Procedure d = io::procedure_from_json(io::Json::parse(procedure), p);
  return dump(io::to_json(synthesize_prior(p, d), d));
}

std::string risk_json(const std::string& problem, const std::string& procedure) {
  const FiniteProblem p = io::problem_from_json(io::Json::parse(problem));
  const Procedure d = io::procedure_from_json(io::Json::parse(procedure), p);
  io::Json out = io::Json::array();
  for (const auto& r : risk_vector(p, d)) out.push_back(to_string(r));
  return dump(out);
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"nsbayes"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact decision-theory engine: Levi-Civita arithmetic, admissibility and Bayes certificates";

  // Registered most general first; pybind11 tries the latest translator first.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<CertificateFailure>(m, "CertificateFailure", base.ptr());
  py::register_exception<ZeroDivision>(m, "ZeroDivision", PyExc_ZeroDivisionError);
  py::register_exception<NotInfinite>(m, "NotInfinite", base.ptr());

  py::class_<LCNumber>(m, "LC")
      .def(py::init([](const std::string& text, int order) { return LCNumber::parse(text, order); }), py::arg("text"),
           py::arg("order") = LCNumber::kDefaultOrder)
      .def(py::init([](long value, int order) { return LCNumber(value, order); }), py::arg("value"),
           py::arg("order") = LCNumber::kDefaultOrder)
      .def_static("eps", &LCNumber::eps, py::arg("order") = LCNumber::kDefaultOrder)
      .def_property_readonly("order", &LCNumber::order)
      .def_property_readonly("valuation",
                             [](const LCNumber& x) -> py::object {
                               auto v = x.valuation();
                               return v ? py::object(py::str(to_string(*v))) : py::object(py::none());
                             })
      .def("standard_part", [](const LCNumber& x) { return to_string(x.standard_part()); })
      .def("is_infinitesimal", &LCNumber::is_infinitesimal)
      .def("is_near_standard", &LCNumber::is_near_standard)
      .def("is_infinite", &LCNumber::is_infinite)
      .def("much_greater", [](const LCNumber& x, const LCNumber& y) { return much_greater(x, y); })
      .def("approx", [](const LCNumber& x, const LCNumber& y) { return approx_equal(x, y); })
      .def("inverse", [](const LCNumber& x) { return inverse(x); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def(py::self <= py::self)
      .def(py::self > py::self)
      .def(py::self >= py::self)
      .def("__str__", &LCNumber::to_string)
      .def("__repr__", [](const LCNumber& x) { return "LC('" + x.to_string() + "')"; });

  m.def("classify_json", &classify_json, py::arg("problem"), py::arg("procedures"));
  m.def("synthesize_prior_json", &synthesize_json, py::arg("problem"), py::arg("procedure"));
  m.def("risk_json", &risk_json, py::arg("problem"), py::arg("procedure"));
  m.def(
      "normal_location_json",
      [](int dim, int order) { return dump(io::to_json(normal_location_report(dim, LCNumber::monomial(1, -1, order)))); },
      py::arg("dim") = 1, py::arg("order") = LCNumber::kDefaultOrder);
  m.def(
      "bernoulli_boundary_json", [](int order) { return dump(io::to_json(bernoulli_boundary_report(order))); },
      py::arg("order") = LCNumber::kDefaultOrder);
  m.def("run_cli", &run, py::arg("args"), "Run the command-line interface in-process; returns (code, stdout, stderr).");
}

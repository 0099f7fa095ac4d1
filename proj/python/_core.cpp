#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trialab/cli.hpp"
#include "trialab/serialize.hpp"
#include "trialab/triality.hpp"

namespace py = pybind11;
using namespace trialab;

namespace {

py::list report_rows(const ValidationReport& r) {
  py::list rows;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["witness"] = c.witness;
    d["evaluated"] = c.evaluated;
    rows.append(d);
  }
  return rows;
}

std::vector<std::uint32_t> coords(const FiniteField& F, Fe x) { return F.coords(x); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact symmetric and cyclic compositions over finite fields";

  py::register_exception<Error>(m, "TrialabError", PyExc_ValueError);
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::class_<FiniteField>(m, "FiniteField")
      .def_static("smallest", &FiniteField::smallest, py::arg("p"), py::arg("k") = 1)
      .def_static("from_spec",
                  [](const std::string& spec) {
                    auto [p, k] = parse_field_spec(spec);
                    return FiniteField::smallest(p, k);
                  })
      .def_property_readonly("p", &FiniteField::characteristic)
      .def_property_readonly("k", &FiniteField::degree)
      .def_property_readonly("order", &FiniteField::order)
      .def_property_readonly("modulus", &FiniteField::modulus)
      .def("__eq__", [](const FiniteField& a, const FiniteField& b) { return a == b; })
      .def("__repr__", &FiniteField::describe);

  py::class_<CubicCyclicExtension>(m, "CubicCyclicExtension")
      .def(py::init<const FiniteField&>())
      .def_property_readonly("base", &CubicCyclicExtension::base)
      .def_property_readonly("top", &CubicCyclicExtension::top);

  py::class_<SymmetricComposition>(m, "SymmetricComposition")
      .def_readonly("field", &SymmetricComposition::field)
      .def("validate", [](const SymmetricComposition& s, std::uint64_t seed) {
        ValidationOptions o;
        o.seed = seed;
        return report_rows(validate(s, o));
      }, py::arg("seed") = kDefaultSeed)
      .def("derivation_dimension", &derivation_dimension)
      .def("idempotent_census", &idempotent_census)
      .def("to_json", [](const SymmetricComposition& s, const std::string& p) { return serialize(s, p); },
           py::arg("provenance") = "")
      .def("__eq__", [](const SymmetricComposition& a, const SymmetricComposition& b) { return a == b; });

  py::class_<CyclicComposition>(m, "CyclicComposition")
      .def_readonly("ext", &CyclicComposition::ext)
      .def_readonly("induced_basis", &CyclicComposition::induced_basis)
      .def("validate", [](const CyclicComposition& g, std::uint64_t seed) {
        ValidationOptions o;
        o.seed = seed;
        return report_rows(validate(g, o));
      }, py::arg("seed") = kDefaultSeed)
      .def("split_form_check", [](const CyclicComposition& g, std::size_t pairs) {
        return report_rows(verify_split_form(g, pairs));
      }, py::arg("pairs") = 500)
      .def("to_json", [](const CyclicComposition& g) { return serialize(g); })
      .def("__eq__", [](const CyclicComposition& a, const CyclicComposition& b) { return a == b; });

  m.def("para_cayley", &para_cayley_split, py::arg("field"));
  m.def("okubo", [](const FiniteField& F) { return okubo(F); }, py::arg("field"));
  m.def("induce", [](const SymmetricComposition& s) { return induce(s, make_extension(s.field)); });

  m.def("parse_structure", [](const std::string& text) -> py::object {
    auto f = parse_structure(text);
    if (f.symmetric) return py::cast(*f.symmetric);
    return py::cast(*f.cyclic);
  });

  m.def("tau_check", [](const CyclicComposition& g) {
    return report_rows(check_trialitarian({g, hat_rho(g)}));
  }, "Trialitarian checks for Int(rho-hat) on an induced composition");

  m.def("descend", [](const CyclicComposition& g) {
    auto d = descend(g, hat_rho(g));
    const auto& L = g.field();
    py::dict out;
    out["sigma"] = d.sigma;
    out["xi"] = coords(L, d.xi);
    out["eta"] = coords(L, d.eta);
    out["mu"] = coords(L, d.mu);
    out["zeta"] = coords(L, d.zeta);
    return out;
  }, "Descent of rho-hat");

  m.def("classify", [](const CyclicComposition& g1, const CyclicComposition& g2) {
    auto c = classify_conjugacy(g1, hat_rho(g1), g2, hat_rho(g2));
    py::dict out;
    out["verdict"] = to_string(c.verdict);
    out["evidence"] = c.evidence;
    py::dict inv;
    for (const auto& r : c.invariants) inv[py::str(r.name)] = py::make_tuple(r.first, r.second);
    out["invariants"] = inv;
    return out;
  }, "Compare Int(rho-hat) on two induced compositions");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command line in-process; returns (exit code, stdout, stderr)");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ostr/bisim.hpp"
#include "ostr/rewrite.hpp"
#include "ostr/specfmt.hpp"
#include "ostr/translation.hpp"
#include "ostr/validity.hpp"

namespace py = pybind11;
using namespace ostr;

namespace {

std::vector<std::string> operator_strings(const std::vector<Operator>& ops) {
  std::vector<std::string> out;
  for (const auto& op : ops) out.push_back(to_string(op));
  return out;
}

template <typename Alg>
std::vector<std::string> rule_strings(const Alg& alg) {
  std::vector<std::string> out;
  for (const auto& r : alg.rules) out.push_back(to_string(r.lhs) + " => " + to_string(r.rhs));
  return out;
}

template <typename Alg>
std::vector<std::string> equation_strings(const Alg& alg) {
  std::vector<std::string> out;
  for (const auto& e : alg.equations) out.push_back(to_string(e.lhs) + " = " + to_string(e.rhs));
  return out;
}

std::vector<std::string> sort_names(const std::vector<Sort>& sorts) {
  std::vector<std::string> out;
  for (const auto& s : sorts) out.push_back(s.name());
  return out;
}

PathTieBreak tie_of(const std::string& name) {
  if (name == "min") return PathTieBreak::lexicographic_min;
  if (name == "max") return PathTieBreak::lexicographic_max;
  throw py::value_error("tie must be 'min' or 'max'");
}

// Class members no taller or larger than the term itself, as in the CLI.
EClassBudget budget(std::size_t depth, std::size_t max_size) { return {depth, max_size, 0, 0}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Order-sorted to many-sorted algebra translation";

  py::exception<Error>(m, "OstrError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("ostr._core").attr("OstrError");
      py::object value = type(e.what());
      value.attr("code") = std::string(error_code_name(e.code()));
      value.attr("line") = e.span().line;
      value.attr("column") = e.span().column;
      PyErr_SetObject(type.ptr(), value.ptr());
    }
  });

  py::class_<OSAlgebra>(m, "OSAlgebra")
      .def_readonly("name", &OSAlgebra::name)
      .def_property_readonly("sorts", [](const OSAlgebra& a) { return sort_names(a.signature.sorts()); })
      .def_property_readonly("subsorts",
                             [](const OSAlgebra& a) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& [lo, hi] : a.signature.poset().base_pairs()) out.emplace_back(lo.name(), hi.name());
                               return out;
                             })
      .def_property_readonly("operators", [](const OSAlgebra& a) { return operator_strings(a.signature.operators()); })
      .def_property_readonly("equations", [](const OSAlgebra& a) { return equation_strings(a); })
      .def_property_readonly("rules", [](const OSAlgebra& a) { return rule_strings(a); })
      .def("least_sort",
           [](const OSAlgebra& a, const std::string& term) {
             return least_sort(a.signature, parse_ground_term(term, a.signature.table())).name();
           })
      .def("__eq__", [](const OSAlgebra& a, const OSAlgebra& b) { return a == b; })
      .def("__str__", [](const OSAlgebra& a) { return print_spec(a); });

  py::class_<MSAlgebra>(m, "MSAlgebra")
      .def_readonly("name", &MSAlgebra::name)
      .def_property_readonly("sorts", [](const MSAlgebra& a) { return sort_names(a.signature.sorts()); })
      .def_property_readonly("operators", [](const MSAlgebra& a) { return operator_strings(a.signature.operators()); })
      .def_property_readonly("equations", [](const MSAlgebra& a) { return equation_strings(a); })
      .def_property_readonly("rules", [](const MSAlgebra& a) { return rule_strings(a); })
      .def_property_readonly("core_equation_count", &MSAlgebra::core_equation_count)
      .def("__eq__", [](const MSAlgebra& a, const MSAlgebra& b) { return a == b; })
      .def("__str__", [](const MSAlgebra& a) { return print_spec(a); });

  py::class_<Violation>(m, "Violation")
      .def_property_readonly("kind", [](const Violation& v) { return std::string(violation_kind_name(v.kind)); })
      .def_readonly("detail", &Violation::detail);

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("sensible", &ValidityReport::sensible)
      .def_readonly("strong_sensible", &ValidityReport::strong_sensible)
      .def_readonly("maximal_argument_bounding", &ValidityReport::maximal_argument_bounding)
      .def_readonly("strictly_sensible", &ValidityReport::strictly_sensible)
      .def_readonly("rules_sort_decreasing", &ValidityReport::rules_sort_decreasing)
      .def_readonly("equations_sort_equal", &ValidityReport::equations_sort_equal)
      .def_readonly("unique_tops", &ValidityReport::unique_tops)
      .def_readonly("violations", &ValidityReport::violations)
      .def_property_readonly("translatable", &ValidityReport::translatable);

  py::class_<Translation>(m, "Translation")
      .def_readonly("algebra", &Translation::algebra)
      .def_property_readonly("casts",
                             [](const Translation& t) {
                               std::vector<std::string> out;
                               for (const auto& c : t.map.casts) out.push_back(c.name);
                               return out;
                             })
      .def("tr_term",
           [](const Translation& t, const std::string& term) {
             return to_string(tr_term(t.map, parse_ground_term(term, t.map.source.table())));
           })
      .def("untranslate",
           [](const Translation& t, const std::string& term) {
             return to_string(untranslate(t.map, parse_ground_term(term, t.algebra.signature.table())));
           })
      .def("canonicalize", [](const Translation& t, const std::string& term) {
        return to_string(core_canonicalize(t.map, parse_ground_term(term, t.algebra.signature.table())));
      });

  py::class_<BisimReport>(m, "BisimReport")
      .def_readonly("terms_checked", &BisimReport::terms_checked)
      .def_readonly("backward_terms_checked", &BisimReport::backward_terms_checked)
      .def_readonly("forward_steps", &BisimReport::forward_steps)
      .def_readonly("backward_steps", &BisimReport::backward_steps)
      .def_readonly("skipped_unexhausted", &BisimReport::skipped_unexhausted)
      .def_readonly("skipped_not_in_image", &BisimReport::skipped_not_in_image)
      .def_readonly("truncated", &BisimReport::truncated)
      .def_property_readonly("forward_failures", [](const BisimReport& r) { return r.forward_failures.size(); })
      .def_property_readonly("backward_failures", [](const BisimReport& r) { return r.backward_failures.size(); })
      .def_property_readonly("passed", &BisimReport::passed);

  m.def("parse_os_algebra", [](const std::string& text) { return parse_os_algebra(text); }, py::arg("text"));
  m.def("parse_ms_algebra", [](const std::string& text) { return parse_ms_algebra(text); }, py::arg("text"));
  m.def("imp_algebra", &imp_algebra);
  m.def("imp_real_algebra", &imp_real_algebra);
  m.def("check", &check_algebra, py::arg("algebra"));
  m.def(
      "translate", [](const OSAlgebra& a, const std::string& tie) { return translate_algebra(a, tie_of(tie)); },
      py::arg("algebra"), py::arg("tie") = "min");

  m.def(
      "rewrite_step",
      [](const OSAlgebra& a, const std::string& term, std::size_t eclass_depth, std::size_t eclass_max) {
        OrderSortedTheory theory(a);
        StepSet set = rewrite_step(theory, parse_ground_term(term, a.signature.table()), budget(eclass_depth, eclass_max));
        std::vector<std::tuple<std::size_t, std::string>> out;
        for (const auto& s : set.steps) out.emplace_back(s.rule_index, to_string(s.result));
        return py::make_tuple(out, set.complete());
      },
      py::arg("algebra"), py::arg("term"), py::arg("eclass_depth") = 5, py::arg("eclass_max") = 10000,
      "Returns ([(rule index, result)], complete).");

  m.def(
      "run_bisim",
      [](const OSAlgebra& a, std::size_t depth, std::size_t eclass_depth, std::size_t max_terms, std::uint64_t seed) {
        BisimConfig cfg;
        cfg.term_depth = depth;
        cfg.eclass_depth = eclass_depth;
        cfg.max_terms = max_terms;
        cfg.seed = seed;
        py::gil_scoped_release release;
        return run_bisim(a, cfg);
      },
      py::arg("algebra"), py::arg("depth") = 3, py::arg("eclass_depth") = 5, py::arg("max_terms") = 200000,
      py::arg("seed") = 0);
}

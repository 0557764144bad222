#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liedim/counterexamples.hpp"
#include "liedim/errors.hpp"
#include "liedim/series.hpp"

namespace py = pybind11;
using namespace liedim;

namespace {

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::list to_py(const IntVector& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::list rows(const SubmoduleBasis& b) {
  py::list out;
  for (std::size_t i = 0; i < b.rank(); ++i) out.append(to_py(b.row(i)));
  return out;
}

std::size_t default_class(std::size_t n, std::optional<std::size_t> c) { return c.value_or(std::max<std::size_t>(n, 2) - 1); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dimension subrings of finitely presented Lie rings (native core)";

  auto base = py::register_exception<Error>(m, "LiedimError");
  py::register_exception<SyntaxError>(m, "ParseError", base);
  py::register_exception<MalformedExpr>(m, "MalformedExpr", base);
  py::register_exception<UnknownGenerator>(m, "UnknownGenerator", base);
  py::register_exception<ClassTooSmall>(m, "ClassTooSmall", base);
  py::register_exception<NotPreabelian>(m, "NotPreabelian", base);
  py::register_exception<BadParameters>(m, "BadParameters", base);
  py::register_exception<OutOfRange>(m, "OutOfRange", base);

  py::class_<Presentation>(m, "Presentation")
      .def_property_readonly("generators", &Presentation::generators)
      .def_property_readonly("relators",
                             [](const Presentation& p) {
                               std::vector<std::string> out;
                               for (const auto& r : p.relators()) out.push_back(expr_to_string(r, p.generators()));
                               return out;
                             })
      .def_property_readonly("is_preabelian", [](const Presentation& p) { return p.preabelian().has_value(); })
      .def("serialize", &serialize)
      .def("__eq__", [](const Presentation& a, const Presentation& b) { return a == b; })
      .def("__repr__", [](const Presentation& p) {
        return "<Presentation " + std::to_string(p.generator_count()) + " generators, " +
               std::to_string(p.relators().size()) + " relators>";
      });

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
  m.def("parse_file", &parse_file, py::arg("path"));
  m.def("preabelianize", &preabelianize, py::arg("presentation"));
  m.def("instantiate_metabelian", &instantiate_metabelian, py::arg("presentation"), py::arg("degree"));

  m.def("witt_dimension", [](std::size_t g, std::size_t d) { return to_py(witt_dimension(g, d)); },
        py::arg("generators"), py::arg("degree"));
  m.def("lyndon_words",
        [](std::size_t g, std::size_t d) {
          std::vector<std::vector<Letter>> out;
          for (const auto& w : lyndon_words(g, d)) out.push_back(w.word.letters());
          return out;
        },
        py::arg("generators"), py::arg("degree"));

  m.def("gamma", [](const Presentation& p, std::size_t n, std::size_t c) { return rows(gamma_n(nilpotent_quotient(p, c), n)); },
        py::arg("presentation"), py::arg("n"), py::arg("class_bound"));
  m.def("delta", [](const Presentation& p, std::size_t n, std::size_t c) { return rows(delta_n(p, n, c)); },
        py::arg("presentation"), py::arg("n"), py::arg("class_bound"));

  m.def(
      "series_report_json",
      [](const Presentation& p, std::size_t max_n, std::optional<std::size_t> c, std::size_t threads) {
        py::gil_scoped_release release;
        return to_json(quotient_report(p, max_n, default_class(max_n, c), threads)).dump();
      },
      py::arg("presentation"), py::arg("max_n"), py::arg("class_bound") = py::none(), py::arg("threads") = 1);

  m.def(
      "check_theorem1",
      [](const Presentation& p, std::size_t n, std::optional<std::size_t> c) {
        CheckResult r = check_theorem1(p, n, default_class(n, c));
        return py::make_tuple(r.holds, r.witness ? py::object(to_py(*r.witness)) : py::object(py::none()));
      },
      py::arg("presentation"), py::arg("n"), py::arg("class_bound") = py::none());
  m.def(
      "check_sjogren",
      [](const Presentation& p, std::size_t n, std::optional<std::size_t> c) {
        return check_sjogren(p, n, default_class(n, c)).holds;
      },
      py::arg("presentation"), py::arg("n"), py::arg("class_bound") = py::none());
  m.def(
      "check_corollary",
      [](const Presentation& p, std::size_t n, std::optional<std::size_t> c) { return check_corollary(p, n, c.value_or(n)); },
      py::arg("presentation"), py::arg("n"), py::arg("class_bound") = py::none());
  m.def(
      "check_lemma2",
      [](const Presentation& p, std::size_t n, std::size_t c) {
        Lemma2Result r = check_lemma2(p, n, c);
        return py::make_tuple(r.part_i, r.part_iii);
      },
      py::arg("presentation"), py::arg("n"), py::arg("class_bound"));

  m.def("sjogren", [](std::size_t n) { return to_py(sjogren(n).c_n); }, py::arg("n"));

  m.def("build_Ln", [](std::size_t n, std::size_t degree) { return counterexample::build_Ln(n, degree == 0 ? 2 * n - 4 : degree); },
        py::arg("n"), py::arg("degree") = 0);
  m.def(
      "verify_counterexample_json",
      [](std::size_t n, std::size_t degree) {
        py::gil_scoped_release release;
        return counterexample::to_json(counterexample::verify(n, degree)).dump();
      },
      py::arg("n"), py::arg("degree") = 0);
}

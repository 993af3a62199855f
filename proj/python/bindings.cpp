#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "syang/errors.hpp"
#include "syang/hopf.hpp"
#include "syang/idealcheck.hpp"
#include "syang/parser.hpp"
#include "syang/presentations.hpp"
#include "syang/suites.hpp"
#include "syang/weyl.hpp"

namespace py = pybind11;
using namespace syang;

namespace {

void register_roots(py::module_& m) {
    py::class_<RootDatum>(m, "RootDatum")
        .def(py::init(&build_root_datum), py::arg("word"), py::arg("affine") = false)
        .def_readonly("word", &RootDatum::word)
        .def_readonly("affine", &RootDatum::affine)
        .def_readonly("m", &RootDatum::m)
        .def_readonly("n", &RootDatum::n)
        .def("node_labels", &RootDatum::node_labels)
        .def("parity", &RootDatum::root_parity, py::arg("label"))
        .def("pair", &RootDatum::pair, py::arg("i"), py::arg("j"))
        .def("__repr__", [](const RootDatum& rd) {
            return "RootDatum('" + rd.word + "', affine=" + (rd.affine ? "True" : "False") + ")";
        });
    m.def("cartan_matrix", [](const RootDatum& rd) { return cartan_matrix(rd).entries; });
    m.def("dynkin_dot", [](const RootDatum& rd) { return dynkin_diagram(rd).to_dot(); });
    m.def("positive_root_count", [](const RootDatum& rd, int N) { return positive_roots(rd, N).size(); },
          py::arg("rd"), py::arg("loop_cutoff") = 0);
    m.def("reflect", [](const RootDatum& rd, std::vector<int> idx) { return apply_word({rd, idx}).datum; });
    m.def("orbit", [](int mm, int n, bool affine) { return orbit(mm, n, affine).nodes; }, py::arg("m"),
          py::arg("n"), py::arg("affine") = false);
}

void register_algebra(py::module_& m) {
    py::class_<Element>(m, "Element")
        .def(py::init([](const std::string& text, const RootDatum& rd) { return parse_element(text, rd); }),
             py::arg("text"), py::arg("datum"))
        .def("__str__", &Element::to_string)
        .def("__repr__", [](const Element& e) { return "Element('" + e.to_string() + "')"; })
        .def("is_zero", &Element::is_zero)
        .def("parity", &Element::parity)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self);
    m.def("bracket", py::overload_cast<const Element&, const Element&>(&super_bracket));
    m.def("anti_bracket", &anti_bracket);
    m.def("relations", [](const RootDatum& rd, const std::string& kind) {
        RelationSet rs = kind == "kac-moody"    ? kac_moody_relations(rd)
                         : kind == "drinfeld"   ? drinfeld_relations(rd, 2)
                                                : minimalistic_relations(rd);
        std::vector<std::pair<std::string, Element>> out;
        for (auto& r : rs.relations) out.emplace_back(r.label, r.element);
        return out;
    }, py::arg("rd"), py::arg("kind") = "minimalistic");
    m.def("reflect_element", [](const RootDatum& rd, int i, const Element& a) {
        return substitute(quantum_reflection(rd, i).map, a);
    });
}

void register_verify(py::module_& m) {
    py::class_<ReportEntry>(m, "ReportEntry")
        .def_readonly("label", &ReportEntry::label)
        .def_readonly("verdict", &ReportEntry::verdict)
        .def_readonly("detail", &ReportEntry::detail)
        .def("ok", &ReportEntry::ok);
    py::class_<Report>(m, "Report")
        .def_readonly("name", &Report::name)
        .def_readonly("entries", &Report::entries)
        .def("all_ok", &Report::all_ok)
        .def("count_ok", &Report::count_ok)
        .def("exit_code", &Report::exit_code)
        .def("to_json", &Report::to_json);
    m.def("verify_kac_moody", &verify_kac_moody, py::arg("rd"), py::arg("loop_cutoff") = 3);
    m.def("verify_quantum_reflection", &verify_quantum_reflection, py::arg("rd"), py::arg("i"),
          py::arg("families") = std::vector<std::string>{}, py::arg("maxlen") = 5, py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("verify_classical_reflection", &verify_classical_reflection, py::arg("rd"), py::arg("i"),
          py::arg("maxlen") = 6, py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("verify_correspondence", [](const RootDatum& rd, int N) {
        return verify_correspondence(rd, rd.node_labels(), {-1, N});
    }, py::arg("rd"), py::arg("loop_cutoff") = 2);
    m.def("verify_counit", &verify_counit);
    m.def("is_member", [](const Element& a, const RootDatum& rd, int L) {
        IdealEngine eng(minimalistic_relations(rd));
        IdealOptions opt;
        opt.L = L;
        auto v = eng.is_member(a, opt);
        return py::make_tuple(v.verdict, v.witness_text());
    }, py::arg("element"), py::arg("rd"), py::arg("maxlen") = 4);
}

}  // namespace

PYBIND11_MODULE(_syang, m) {
    m.doc() = "super Yangian presentations and reflections";
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<Error>(m, "SyangError", PyExc_ValueError);
    register_roots(m);
    register_algebra(m);
    register_verify(m);
}

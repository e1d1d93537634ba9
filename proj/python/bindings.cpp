#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "tropinf/error.hpp"
#include "tropinf/infer.hpp"
#include "tropinf/json_io.hpp"

namespace py = pybind11;
using namespace tropinf;

namespace {

ProbAssignment probs_from(const std::vector<std::string>& xs) {
    ProbAssignment p;
    for (const auto& x : xs) p.p.push_back(rational_from_text(x));
    p.validate();
    return p;
}

py::dict selected_dict(const SelectedTrajectory& s) {
    py::dict d;
    d["monomial"] = to_string(s.monomial);
    d["exponents"] = s.monomial.e;
    d["word"] = s.word.str();
    return d;
}

} // namespace

PYBIND11_MODULE(_tropinf, m) {
    m.doc() = "Tropical most-likely-trajectory inference for parametric probabilistic PCF";

    // Later registrations are tried first, so the base class goes first.
    auto& base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<TypeError>(m, "TypeError", base.ptr());
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<ResourceExhausted>(m, "ResourceExhausted", base.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<Program>(m, "Program")
        .def_readonly("params", &Program::params)
        .def_property_readonly("text", [](const Program& p) { return to_string(*p.term); })
        .def("type", [](const Program& p) { return to_string(*check_program(p.term).type); })
        .def("__repr__", [](const Program& p) { return "<Program " + to_string(*p.term) + ">"; });

    m.def("parse", &parse, py::arg("source"), "Parse a program; raises ParseError.");

    m.def(
        "enumerate",
        [](const Program& p, uint64_t budget) {
            check_program(p.term);
            EnumerateOptions opt;
            opt.max_steps = budget;
            Enumeration en = enumerate_trajectories(p.term, p.params, opt);
            py::list rows;
            for (const auto& t : en.trajectories) {
                py::dict d;
                d["monomial"] = to_string(t.monomial);
                d["exponents"] = t.monomial.e;
                d["word"] = t.word.str();
                d["outcome"] = t.value ? py::object(py::int_(*t.value)) : py::object(py::none());
                rows.append(d);
            }
            return py::make_tuple(rows, en.truncated);
        },
        py::arg("program"), py::arg("budget") = 10000,
        "All reductions within the step budget, and whether paths were dropped.");

    py::class_<AnalysisReport>(m, "Report")
        .def_readonly("target", &AnalysisReport::target)
        .def_readonly("params", &AnalysisReport::params)
        .def_readonly("degree", &AnalysisReport::degree_estimate)
        .def_readonly("stable", &AnalysisReport::stable)
        .def_readonly("schedule", &AnalysisReport::schedule)
        .def_readonly("exhausted", &AnalysisReport::exhausted)
        .def_property_readonly("polynomial", [](const AnalysisReport& r) { return to_string(r.polynomial); })
        .def_property_readonly("relative", &AnalysisReport::relative)
        .def_property_readonly("selected",
                               [](const AnalysisReport& r) {
                                   py::list out;
                                   for (const auto& s : r.selected) out.append(selected_dict(s));
                                   return out;
                               })
        .def("to_json", [](const AnalysisReport& r) { return to_json(r).dump(); })
        .def_static("from_json", [](const std::string& s) { return report_from_json(json::parse(s)); });

    m.def(
        "analyze",
        [](const Program& p, uint64_t target, int window, int max_rounds, std::size_t max_entries) {
            AnalysisConfig cfg;
            cfg.target = target;
            cfg.window = window;
            cfg.max_rounds = max_rounds;
            cfg.max_entries = max_entries;
            py::gil_scoped_release release;
            return analyze(p, cfg);
        },
        py::arg("program"), py::arg("target") = 1, py::arg("window") = 2, py::arg("max_rounds") = 16,
        py::arg("max_entries") = 200000);

    m.def(
        "solve_i1",
        [](const AnalysisReport& r, const std::vector<std::string>& probs) {
            I1Answer a = solve_i1(r, probs_from(probs));
            py::dict d;
            d["value"] = a.infinite ? std::numeric_limits<double>::infinity() : a.value;
            d["probability"] = rational_text(a.probability);
            py::list ws;
            for (const auto& w : a.winners) ws.append(selected_dict(w));
            d["winners"] = ws;
            d["relative"] = a.relative;
            return d;
        },
        py::arg("report"), py::arg("probs"), "probs are rational strings such as '1/2'.");

    py::class_<I2Answer>(m, "Cone")
        .def_property_readonly("rows",
                               [](const I2Answer& a) {
                                   std::vector<std::string> out;
                                   for (const auto& row : a.cone.rows) out.push_back(row_to_string(row));
                                   return out;
                               })
        .def_property_readonly("witness",
                               [](const I2Answer& a) -> std::optional<std::vector<std::string>> {
                                   if (!a.witness) return std::nullopt;
                                   std::vector<std::string> out;
                                   for (const auto& x : *a.witness) out.push_back(rational_text(x));
                                   return out;
                               })
        .def_readonly("strict", &I2Answer::strict)
        .def_readonly("relative", &I2Answer::relative)
        .def("contains", [](const I2Answer& a, const std::vector<std::string>& probs) { return a.test(probs_from(probs)); });

    m.def(
        "solve_i2",
        [](const AnalysisReport& r, std::vector<uint32_t> exponents) { return solve_i2(r, Monomial(std::move(exponents))); },
        py::arg("report"), py::arg("exponents"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framelimit/errors.hpp"
#include "framelimit/pipeline.hpp"

namespace py = pybind11;
using namespace framelimit;

namespace {

// Documents and reports cross the boundary as JSON text; the Python side
// wraps them with the json module.
FrameDocument document_from(const std::string& text, const std::string& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(e.what());
    }
    return parse_document(j, base_dir);
}

std::string run(const FrameDocument& doc, const std::string& pattern, bool assess) {
    std::optional<AssessmentOptions> assessment;
    if (assess) assessment = doc.assessment.value_or(AssessmentOptions{});
    std::vector<PatternReport> reports;
    for (const auto& p : doc.patterns) {
        if (pattern == "all" || p.name == pattern) reports.push_back(analyze_pattern(doc, p, assessment));
    }
    if (reports.empty()) throw ValidationError("no pattern named '" + pattern + "'");
    return report_json(reports, doc).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Collapse mechanisms and capacity curves of planar steel frames";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
    // Subclasses of NumericalError surface as NumericalError.
    (void)numerical;

    m.def(
        "analyze_json",
        [](const std::string& text, const std::string& base_dir, const std::string& pattern, bool assess) {
            const auto doc = document_from(text, base_dir);
            py::gil_scoped_release release;
            return run(doc, pattern, assess);
        },
        py::arg("document"), py::arg("base_dir") = "", py::arg("pattern") = "all", py::arg("assess") = false,
        "Runs the pipeline on a frame document given as JSON text; returns the report as JSON text.");

    m.def(
        "analyze_file",
        [](const std::string& path, const std::string& pattern, bool assess) {
            const auto doc = load_document(path);
            py::gil_scoped_release release;
            return run(doc, pattern, assess);
        },
        py::arg("path"), py::arg("pattern") = "all", py::arg("assess") = false);

    m.def(
        "curve_csv",
        [](const std::string& path, const std::string& pattern) {
            const auto doc = load_document(path);
            return curve_csv(analyze_pattern(doc, doc.pattern(pattern)).curve);
        },
        py::arg("path"), py::arg("pattern"));

    m.def(
        "evaluate_lambda0",
        [](const std::string& path, const std::string& pattern, const std::vector<int>& genes) {
            const auto doc = load_document(path);
            const MechanismPool pool(doc.frame, doc.pattern(pattern), doc.analysis.pool);
            return pool.lambda0(genes);
        },
        py::arg("path"), py::arg("pattern"), py::arg("genes"));

    m.def(
        "mechanism_labels",
        [](const std::string& path, const std::string& pattern) {
            const auto doc = load_document(path);
            const MechanismPool pool(doc.frame, doc.pattern(pattern), doc.analysis.pool);
            std::vector<std::string> out;
            for (const auto& mech : pool.mechanisms()) out.push_back(mech.label());
            return out;
        },
        py::arg("path"), py::arg("pattern"));

    m.def(
        "spectral_acceleration",
        [](double ag_g, double S, double eta, double F0, double TB, double TC, double TD, double period) {
            SpectrumParams p{ag_g, S, eta, F0, TB, TC, TD};
            p.validate();
            return spectral_acceleration(p, period);
        },
        py::arg("ag_g"), py::arg("S"), py::arg("eta"), py::arg("F0"), py::arg("TB"), py::arg("TC"), py::arg("TD"),
        py::arg("period"), "Elastic spectral acceleration in m/s^2.");
}

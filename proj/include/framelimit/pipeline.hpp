#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "framelimit/document.hpp"

namespace framelimit {

struct Verification {
    EquivalentSDOF sdof;
    AssessmentResult result;
    SpectrumParams spectrum;
    std::vector<double> shape;
    std::vector<double> floor_masses;
};

/// Everything computed for one lateral load pattern.
struct PatternReport {
    std::string pattern;
    std::vector<double> forces;
    SearchMethod method = SearchMethod::ga;
    std::vector<std::string> mechanism_labels;  // gene order
    ElasticSolution elastic;
    CollapseResult collapse;
    std::vector<HingeCapacity> hinges;
    CapacityCurve curve;
    std::optional<Verification> verification;
    double elapsed_ms = 0.0;
};

PatternReport analyze_pattern(const FrameDocument& doc, const LateralLoadPattern& pattern,
                              const std::optional<AssessmentOptions>& assessment = std::nullopt);

/// Floor displacement shape used for the equivalent oscillator.
std::vector<double> sdof_shape(const FrameDocument& doc, ShapeSource source, std::span<const double> masses);

/// Report JSON. Unbounded displacements are written as null; wall-clock
/// timings are kept under "timing" so the rest is reproducible byte for byte.
nlohmann::json report_json(const std::vector<PatternReport>& reports, const FrameDocument& doc);

/// Plot-ready CSV of a truncated capacity curve.
void write_curve_csv(const CapacityCurve& curve, const std::filesystem::path& path);
std::string curve_csv(const CapacityCurve& curve);

}  // namespace framelimit

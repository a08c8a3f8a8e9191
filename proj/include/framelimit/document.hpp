#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "framelimit/capacity_assembly.hpp"
#include "framelimit/collapse_search.hpp"
#include "framelimit/frame_model.hpp"
#include "framelimit/n2_assessment.hpp"

namespace framelimit {

// Colon-separated directories searched for section libraries.
inline constexpr const char* kSectionPathEnv = "FRAMELIMIT_SECTION_PATH";

enum class SearchMethod { ga, exhaustive };
enum class ShapeSource { fundamental_mode, elastic };

std::string to_string(SearchMethod m);
std::string to_string(ShapeSource s);

struct AnalysisOptions {
    double alpha_s = kDefaultAlphaS;
    int c_max = 2;
    SearchMethod method = SearchMethod::ga;
    GAConfig ga;
    double budget = kDefaultEvaluationBudget;
    PoolOptions pool;
    std::size_t curve_samples = kDefaultSofteningSamples;
};

struct AssessmentOptions {
    std::optional<std::vector<double>> floor_masses;
    ShapeSource shape = ShapeSource::fundamental_mode;
    std::optional<SpectrumParams> spectrum;
};

struct FrameDocument {
    FrameSpec frame;
    std::vector<LateralLoadPattern> patterns;
    AnalysisOptions analysis;
    std::optional<AssessmentOptions> assessment;
    std::filesystem::path base_dir;

    const LateralLoadPattern& pattern(const std::string& name) const;
};

/// Parses a frame document. Every error names the JSON path of the offending
/// field; unknown keys are rejected.
FrameDocument parse_document(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
FrameDocument load_document(const std::filesystem::path& path);

/// Section library: {"profiles": {name: {...}}}.
SectionTable parse_section_library(const nlohmann::json& doc, const std::string& where,
                                   std::optional<double> default_modulus, std::optional<double> default_fy);

/// Spectrum file: {ag_g, S, eta, F0, TB, TC, TD} plus optional name and note.
SpectrumParams parse_spectrum(const nlohmann::json& doc, const std::string& path = "$");
SpectrumParams load_spectrum(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Resolves a library file name against `base_dir`, then kSectionPathEnv.
std::filesystem::path resolve_library(const std::string& name, const std::filesystem::path& base_dir);

}  // namespace framelimit

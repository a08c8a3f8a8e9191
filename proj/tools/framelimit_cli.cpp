#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "framelimit/errors.hpp"
#include "framelimit/pipeline.hpp"

namespace fs = std::filesystem;
using namespace framelimit;

namespace {

enum ExitCode { ok = 0, io_error = 1, validation_error = 2, numerical_error = 3 };

struct Flags {
    std::string input;
    std::string pattern = "all";
    std::optional<std::string> method;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha_s;
    std::optional<int> c_max;
    std::optional<std::size_t> samples;
    std::optional<unsigned> threads;
    std::string out;
    std::string curve;
    std::string spectrum;
};

void add_common(CLI::App& cmd, Flags& f) {
    cmd.add_option("input", f.input, "Frame document (JSON)")->required();
    cmd.add_option("--pattern", f.pattern, "Pattern name or 'all'");
    cmd.add_option("--method", f.method, "Collapse search: ga or exhaustive")
        ->check(CLI::IsMember({"ga", "exhaustive"}));
    cmd.add_option("--seed", f.seed, "64-bit seed of the genetic algorithm");
    cmd.add_option("--alpha-s", f.alpha_s, "Admissible base-shear drop fraction");
    cmd.add_option("--c-max", f.c_max, "Largest multiplicity of one elementary mechanism");
    cmd.add_option("--samples", f.samples, "Points on the softening branch of the curve");
    cmd.add_option("--threads", f.threads, "Worker threads for fitness evaluation");
}

void apply_overrides(FrameDocument& doc, const Flags& f) {
    auto& a = doc.analysis;
    if (f.method) a.method = *f.method == "exhaustive" ? SearchMethod::exhaustive : SearchMethod::ga;
    if (f.seed) a.ga.seed = *f.seed;
    if (f.alpha_s) {
        if (!(*f.alpha_s >= 0.0 && *f.alpha_s < 1.0)) throw ValidationError("--alpha-s must lie in [0, 1)");
        a.alpha_s = *f.alpha_s;
    }
    if (f.c_max) {
        if (*f.c_max < 1) throw ValidationError("--c-max must be at least 1");
        a.c_max = *f.c_max;
        a.ga.c_max = *f.c_max;
    }
    if (f.samples) {
        if (*f.samples < 1) throw ValidationError("--samples must be at least 1");
        a.curve_samples = *f.samples;
    }
    if (f.threads) a.ga.threads = std::max(1u, *f.threads);
}

std::vector<LateralLoadPattern> selected_patterns(const FrameDocument& doc, const std::string& name) {
    if (name == "all") return doc.patterns;
    return {doc.pattern(name)};
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path + "'");
}

// One CSV per pattern; with several patterns the pattern name is appended to the stem.
void write_curves(const std::vector<PatternReport>& reports, const std::string& path) {
    if (path.empty()) return;
    for (const auto& r : reports) {
        fs::path p = path;
        if (reports.size() > 1) p.replace_filename(p.stem().string() + "_" + r.pattern + p.extension().string());
        write_curve_csv(r.curve, p);
    }
}

int run(const std::string& command, const Flags& f) {
    auto doc = load_document(f.input);
    apply_overrides(doc, f);

    std::optional<AssessmentOptions> assessment;
    if (command == "assess") {
        assessment = doc.assessment.value_or(AssessmentOptions{});
        if (!f.spectrum.empty()) assessment->spectrum = load_spectrum(f.spectrum);
        if (!assessment->spectrum) throw ValidationError("$.assessment.spectrum: missing (or pass --spectrum)");
    }

    std::vector<PatternReport> reports;
    for (const auto& p : selected_patterns(doc, f.pattern)) reports.push_back(analyze_pattern(doc, p, assessment));

    if (command == "curve") {
        if (reports.size() != 1) throw ValidationError("curve: select a single pattern with --pattern");
        emit(curve_csv(reports.front().curve), f.out);
        return ok;
    }
    write_curves(reports, f.curve);
    emit(report_json(reports, doc).dump(2) + "\n", f.out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collapse mechanism, capacity curve and seismic verification of planar steel frames"};
    app.require_subcommand(1);

    Flags flags;
    auto* analyze = app.add_subcommand("analyze", "Collapse search and capacity curve per pattern");
    add_common(*analyze, flags);
    analyze->add_option("--out", flags.out, "Report file (default: stdout)");
    analyze->add_option("--curve", flags.curve, "Capacity curve CSV");

    auto* assess = app.add_subcommand("assess", "Analyze plus equivalent SDOF and displacement verification");
    add_common(*assess, flags);
    assess->add_option("--out", flags.out, "Report file (default: stdout)");
    assess->add_option("--curve", flags.curve, "Capacity curve CSV");
    assess->add_option("--spectrum", flags.spectrum, "Spectrum file overriding the document");

    auto* curve = app.add_subcommand("curve", "Capacity curve of one pattern as CSV");
    add_common(*curve, flags);
    curve->add_option("--out", flags.out, "CSV file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : validation_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, flags);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation_error;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io_error;
    }
}

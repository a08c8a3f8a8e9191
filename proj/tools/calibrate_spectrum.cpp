// Rescales a_g of a spectrum file so that one pattern of a frame document
// reaches a prescribed displacement demand.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "framelimit/errors.hpp"
#include "framelimit/pipeline.hpp"

using namespace framelimit;

int main(int argc, char** argv) {
    CLI::App app{"Calibrate the peak ground acceleration of a spectrum file"};
    std::string input, spectrum_path, pattern = "mass_proportional", out;
    std::optional<double> demand, safety_factor;
    app.add_option("input", input, "Frame document")->required();
    app.add_option("--spectrum", spectrum_path, "Base spectrum file")->required();
    app.add_option("--pattern", pattern, "Pattern whose demand is matched");
    app.add_option("--demand", demand, "Target displacement demand, m");
    app.add_option("--safety-factor", safety_factor,
                   "Target safety factor; with --demand the geometric mean of both targets is used");
    app.add_option("--out", out, "Output spectrum file (default: stdout)");
    CLI11_PARSE(app, argc, argv);

    try {
        if (!demand && !safety_factor) throw ValidationError("give --demand, --safety-factor or both");
        auto doc = load_document(input);
        const auto base = load_spectrum(spectrum_path);
        AssessmentOptions assessment = doc.assessment.value_or(AssessmentOptions{});
        assessment.spectrum = base;
        const auto report = analyze_pattern(doc, doc.pattern(pattern), assessment);
        const auto& sdof = report.verification->sdof;

        double target = 0.0;
        if (demand && safety_factor) {
            target = std::sqrt(*demand * sdof.d_u_star / *safety_factor);
        } else if (demand) {
            target = *demand;
        } else {
            target = sdof.d_u_star / *safety_factor;
        }

        SpectrumParams calibrated = base;
        calibrated.ag_g = calibrate_peak_ground_acceleration(sdof, base, target);
        const auto check = demand_and_verify(sdof, calibrated);

        nlohmann::json spec = read_json_file(spectrum_path);
        spec["ag_g"] = calibrated.ag_g;
        spec["name"] = spec.value("name", std::string("spectrum")) + "-calibrated";
        spec["note"] = "Calibrated, not normative: a_g rescaled so that pattern '" + pattern +
                       "' of the benchmark gives demand " + std::to_string(check.demand) +
                       " m and safety factor " + std::to_string(check.safety_factor) + ".";
        const auto text = spec.dump(2) + "\n";
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out);
            if (!(f << text)) throw Error("cannot write '" + out + "'");
        }
        std::cerr << "ag_g = " << calibrated.ag_g << ", demand = " << check.demand
                  << ", safety_factor = " << check.safety_factor << "\n";
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

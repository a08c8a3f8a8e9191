#pragma once

#include <algorithm>
#include <random>
#include <string>

#include "framelimit/document.hpp"

namespace framelimit::testing {

inline std::string data_path(const std::string& relative) { return std::string(FRAMELIMIT_DATA_DIR) + "/" + relative; }

inline const FrameDocument& benchmark() {
    static const FrameDocument doc = load_document(data_path("benchmark.json"));
    return doc;
}

enum class Gravity { none, positive, mixed };

struct RandomFrameOptions {
    std::size_t max_storeys = 3;
    std::size_t max_columns = 4;
    Gravity gravity = Gravity::positive;
};

// Regular frame with random geometry, one beam and one column profile per storey.
inline FrameSpec random_frame(std::mt19937_64& rng, const RandomFrameOptions& opt = {}) {
    auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    auto count = [&](std::size_t a, std::size_t b) { return std::uniform_int_distribution<std::size_t>(a, b)(rng); };

    FrameSpec f;
    const std::size_t n_f = count(1, opt.max_storeys);
    const std::size_t n_b = count(1, opt.max_columns - 1);
    for (std::size_t i = 0; i < n_f; ++i) f.storey_heights.push_back(uniform(2.8, 4.0));
    for (std::size_t j = 0; j < n_b; ++j) f.bay_lengths.push_back(uniform(3.0, 7.0));
    for (std::size_t i = 0; i < n_f; ++i) {
        const std::string beam = "B" + std::to_string(i), column = "C" + std::to_string(i);
        f.sections[beam] = {uniform(5e-5, 3e-4), uniform(100.0, 450.0), 2.1e8, std::nullopt, std::nullopt};
        f.sections[column] = {uniform(5e-5, 3e-4), uniform(150.0, 500.0), 2.1e8, std::nullopt, std::nullopt};
        f.beam_sections.emplace_back(n_b, beam);
        f.column_sections.emplace_back(n_b + 1, column);
        std::vector<double> q;
        for (std::size_t j = 0; j < n_b; ++j) {
            const double cap = 0.95 * 16.0 * f.sections[beam].plastic_moment / (f.bay_lengths[j] * f.bay_lengths[j]);
            double load = 0.0;
            if (opt.gravity == Gravity::positive) load = uniform(1.0, std::min(80.0, cap));
            if (opt.gravity == Gravity::mixed && uniform(0.0, 1.0) < 0.5) load = uniform(0.0, std::min(80.0, cap));
            q.push_back(load);
        }
        f.vertical_loads.push_back(std::move(q));
    }
    return f;
}

inline LateralLoadPattern random_pattern(std::mt19937_64& rng, const FrameSpec& frame) {
    LateralLoadPattern p;
    p.name = "random";
    for (std::size_t i = 0; i < frame.n_storeys(); ++i) p.forces.push_back(std::uniform_real_distribution<double>(10.0, 500.0)(rng));
    return p;
}

inline Genes random_genes(std::mt19937_64& rng, std::size_t n, int c_max) {
    Genes g(n);
    for (auto& c : g) c = std::uniform_int_distribution<int>(0, c_max)(rng);
    return g;
}

}  // namespace framelimit::testing

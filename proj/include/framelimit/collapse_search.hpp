#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "framelimit/mechanism_engine.hpp"

namespace framelimit {

struct GAConfig {
    std::size_t population_size = 100;
    int c_max = 2;
    std::size_t generations = 500;
    double crossover_rate = 0.8;
    std::optional<double> mutation_rate;  // per gene; defaults to 2 / pool size
    std::size_t elite_count = 2;
    std::size_t tournament_size = 3;
    std::optional<double> fitness_offset;  // lower bound for K in f = K - lambda0
    std::uint64_t seed = 1;
    std::size_t stall_limit = 100;
    unsigned threads = 1;
    bool local_search = true;  // one- and two-gene descent on the final best
    std::vector<Genes> initial_population;  // optional seeds, completed at random

    void validate() const;
};

struct Hinge {
    std::size_t section_index = 0;
    CriticalSection section;
    double rho = 0.0;
};

struct CollapseResult {
    Genes best_genes;
    double lambda0 = 0.0;
    SofteningData softening;
    std::vector<Hinge> hinges;
    std::vector<std::pair<std::size_t, double>> history;  // (generation, best lambda0 so far)
    std::uint64_t evaluations = 0;
};

inline constexpr double kDefaultEvaluationBudget = 1e8;

/// Collapse data for one gene vector: lambda0, softening and hinge set.
CollapseResult describe_combination(const MechanismPool& pool, std::span<const int> genes);

/// Global minimum of lambda0 over every gene vector in [0, c_max]^N.
/// Ties resolve to the lexicographically smallest gene vector.
CollapseResult search_exhaustive(const MechanismPool& pool, int c_max,
                                 double budget = kDefaultEvaluationBudget);

CollapseResult search_ga(const MechanismPool& pool, const GAConfig& config);

}  // namespace framelimit

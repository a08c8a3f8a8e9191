#include "framelimit/collapse_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "framelimit/errors.hpp"

namespace framelimit {

namespace {

// Relative tolerance under which two multipliers count as a tie.
constexpr double kTieTolerance = 1e-10;

bool improves(double candidate, double incumbent) {
    if (!std::isfinite(incumbent)) return std::isfinite(candidate);
    return candidate < incumbent - kTieTolerance * std::max(1.0, std::abs(incumbent));
}

bool ties(double a, double b) {
    return std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= kTieTolerance * std::max(1.0, std::abs(b));
}

// Flattened pool for allocation-free evaluation.
struct Kernel {
    std::vector<double> plastic_moments;
    std::vector<std::vector<std::pair<std::size_t, double>>> rotations;
    std::vector<double> w_h;
    std::vector<double> w_v;

    explicit Kernel(const MechanismPool& pool) {
        for (const auto& s : pool.sections()) plastic_moments.push_back(s.plastic_moment);
        for (const auto& m : pool.mechanisms()) {
            rotations.push_back(m.rotations);
            w_h.push_back(m.w_ext_h);
            w_v.push_back(m.w_ext_v);
        }
    }

    // +inf marks a combination without lateral work.
    double lambda0(std::span<const int> genes, std::vector<double>& rho) const {
        std::fill(rho.begin(), rho.end(), 0.0);
        double wh = 0.0, wv = 0.0;
        for (std::size_t k = 0; k < genes.size(); ++k) {
            const int c = genes[k];
            if (c == 0) continue;
            for (const auto& [s, coef] : rotations[k]) rho[s] += c * coef;
            wh += c * w_h[k];
            wv += c * w_v[k];
        }
        if (!(wh > 0.0)) return std::numeric_limits<double>::infinity();
        double wi = 0.0;
        for (std::size_t s = 0; s < rho.size(); ++s) wi += plastic_moments[s] * std::abs(rho[s]);
        return (wi - wv) / wh;
    }
};

class Enumerator {
public:
    Enumerator(const Kernel& kernel, int c_max)
        : kernel_(kernel), c_max_(c_max), genes_(kernel.rotations.size(), 0),
          rho_(kernel.plastic_moments.size(), 0.0) {}

    void run() { visit(0, 0.0, 0.0, 0.0, false); }

    const Genes& best() const { return best_genes_; }
    double best_lambda() const { return best_lambda_; }
    std::uint64_t evaluations() const { return evaluations_; }

private:
    // Works travel down the recursion by value so rounding never accumulates
    // across siblings; touched rotations are restored from a saved copy.
    void visit(std::size_t k, double wi, double wh, double wv, bool lateral) {
        if (k == genes_.size()) {
            ++evaluations_;
            if (!lateral) return;
            const double lambda = (wi - wv) / wh;
            if (improves(lambda, best_lambda_)) {
                best_lambda_ = lambda;
                best_genes_ = genes_;
            }
            return;
        }
        const auto& rot = kernel_.rotations[k];
        double saved[8];
        std::vector<double> saved_heap;
        double* store = saved;
        if (rot.size() > 8) {
            saved_heap.resize(rot.size());
            store = saved_heap.data();
        }
        for (std::size_t r = 0; r < rot.size(); ++r) store[r] = rho_[rot[r].first];

        const bool adds_lateral = kernel_.w_h[k] > 0.0;
        for (int c = 0; c <= c_max_; ++c) {
            if (c > 0) {
                for (const auto& [s, coef] : rot) {
                    const double before = rho_[s];
                    const double after = before + coef;
                    wi += kernel_.plastic_moments[s] * (std::abs(after) - std::abs(before));
                    rho_[s] = after;
                }
                wh += kernel_.w_h[k];
                wv += kernel_.w_v[k];
            }
            genes_[k] = c;
            visit(k + 1, wi, wh, wv, lateral || (adds_lateral && c > 0));
        }
        genes_[k] = 0;
        for (std::size_t r = 0; r < rot.size(); ++r) rho_[rot[r].first] = store[r];
    }

    const Kernel& kernel_;
    int c_max_;
    Genes genes_;
    std::vector<double> rho_;
    Genes best_genes_;
    double best_lambda_ = std::numeric_limits<double>::infinity();
    std::uint64_t evaluations_ = 0;
};

void evaluate_population(const Kernel& kernel, const std::vector<Genes>& population, std::vector<double>& lambdas,
                         unsigned threads) {
    lambdas.resize(population.size());
    const std::size_t n_sections = kernel.plastic_moments.size();
    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<double> rho(n_sections);
        for (std::size_t p = begin; p < end; ++p) lambdas[p] = kernel.lambda0(population[p], rho);
    };
    const std::size_t n = population.size();
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        work(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk, end = std::min(n, begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
    }
}

// Better multiplier, or an equal one on a lexicographically smaller vector.
bool preferred(double lambda, const Genes& genes, double best, const Genes& best_genes) {
    return improves(lambda, best) || (ties(lambda, best) && genes < best_genes);
}

// Descent over all one- and two-gene changes. Ties are accepted only towards
// lexicographically smaller vectors, so the walk terminates and resolves
// degenerate optima the same way the exhaustive search does.
std::uint64_t polish(const Kernel& kernel, int c_max, Genes& genes, double& lambda) {
    const std::size_t n = genes.size();
    std::vector<double> rho(kernel.plastic_moments.size());
    std::uint64_t evaluations = 0;
    Genes trial = genes;
    for (bool moved = true; moved;) {
        moved = false;
        // Multipliers and softening are homogeneous of degree zero in the genes.
        int divisor = 0;
        for (int c : genes) divisor = std::gcd(divisor, c);
        if (divisor > 1) {
            for (auto& c : trial) c /= divisor;
            const double l = kernel.lambda0(trial, rho);
            ++evaluations;
            if (preferred(l, trial, lambda, genes)) {
                genes = trial;
                lambda = l;
                moved = true;
                continue;
            }
            trial = genes;
        }
        for (std::size_t a = 0; a < n && !moved; ++a) {
            for (int va = 0; va <= c_max && !moved; ++va) {
                if (va == genes[a]) continue;
                trial[a] = va;
                for (std::size_t b = a; b < n && !moved; ++b) {
                    for (int vb = 0; vb <= c_max && !moved; ++vb) {
                        if (b == a) {
                            if (vb > 0) break;  // the single change, tried once
                        } else {
                            if (vb == genes[b]) continue;
                            trial[b] = vb;
                        }
                        const double l = kernel.lambda0(trial, rho);
                        ++evaluations;
                        if (preferred(l, trial, lambda, genes)) {
                            genes = trial;
                            lambda = l;
                            moved = true;
                        }
                        if (b != a && !moved) trial[b] = genes[b];
                    }
                }
                if (!moved) trial[a] = genes[a];
            }
        }
        trial = genes;
    }
    return evaluations;
}

}  // namespace

void GAConfig::validate() const {
    if (population_size < 2) throw ValidationError("ga.population_size must be at least 2");
    if (c_max < 1) throw ValidationError("c_max must be at least 1");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw ValidationError("ga.crossover_rate must lie in [0, 1]");
    if (mutation_rate && (*mutation_rate < 0.0 || *mutation_rate > 1.0)) {
        throw ValidationError("ga.mutation_rate must lie in [0, 1]");
    }
    if (elite_count >= population_size) throw ValidationError("ga.elite_count must be below population_size");
    if (tournament_size < 1) throw ValidationError("ga.tournament_size must be at least 1");
    if (threads < 1) throw ValidationError("ga.threads must be at least 1");
}

CollapseResult describe_combination(const MechanismPool& pool, std::span<const int> genes) {
    CollapseResult out;
    out.best_genes.assign(genes.begin(), genes.end());
    out.lambda0 = pool.lambda0(genes);
    out.softening = pool.softening(genes);
    for (const auto& [s, rho] : pool.hinges(genes)) out.hinges.push_back({s, pool.sections()[s], rho});
    return out;
}

CollapseResult search_exhaustive(const MechanismPool& pool, int c_max, double budget) {
    if (c_max < 1) throw ValidationError("c_max must be at least 1");
    const double space = std::pow(static_cast<double>(c_max) + 1.0, static_cast<double>(pool.size()));
    if (space > budget) {
        throw BudgetExceeded("exhaustive search needs " + std::to_string(space) + " evaluations, budget is " +
                             std::to_string(budget));
    }
    const Kernel kernel(pool);
    Enumerator enumerator(kernel, c_max);
    enumerator.run();
    if (enumerator.best().empty()) throw NoMechanism("no gene vector does work against the lateral forces");

    CollapseResult out = describe_combination(pool, enumerator.best());
    out.history.emplace_back(0, out.lambda0);
    out.evaluations = enumerator.evaluations();
    return out;
}

CollapseResult search_ga(const MechanismPool& pool, const GAConfig& config) {
    config.validate();
    const std::size_t n_genes = pool.size();
    const std::size_t P = config.population_size;
    const Kernel kernel(pool);
    const double mutation_rate =
        config.mutation_rate.value_or(std::min(1.0, 2.0 / static_cast<double>(n_genes)));

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<int> allele(0, config.c_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, P - 1);

    std::vector<Genes> population;
    population.reserve(P);
    for (const auto& seed_genes : config.initial_population) {
        if (population.size() == P) break;
        if (seed_genes.size() != n_genes) throw ValidationError("initial_population: wrong gene count");
        for (int c : seed_genes) {
            if (c < 0 || c > config.c_max) throw ValidationError("initial_population: gene out of range");
        }
        population.push_back(seed_genes);
    }
    while (population.size() < P) {
        Genes g(n_genes);
        for (auto& c : g) c = allele(rng);
        population.push_back(std::move(g));
    }

    std::vector<double> lambdas;
    std::uint64_t evaluations = 0;
    Genes best_genes;
    double best = std::numeric_limits<double>::infinity();
    double worst_seen = -std::numeric_limits<double>::infinity();

    auto absorb = [&]() {
        bool improved = false;
        for (std::size_t p = 0; p < P; ++p) {
            const double lambda = lambdas[p];
            if (!std::isfinite(lambda)) continue;
            worst_seen = std::max(worst_seen, lambda);
            if (improves(lambda, best)) {
                best = lambda;
                best_genes = population[p];
                improved = true;
            } else if (ties(lambda, best) && population[p] < best_genes) {
                best_genes = population[p];
            }
        }
        return improved;
    };

    evaluate_population(kernel, population, lambdas, config.threads);
    evaluations += P;
    absorb();

    CollapseResult result;
    result.history.emplace_back(0, best);
    std::size_t stall = 0;
    std::vector<double> fitness(P);
    std::vector<std::size_t> order(P);

    for (std::size_t gen = 1; gen <= config.generations && stall < config.stall_limit; ++gen) {
        // K = twice the largest multiplier seen keeps every valid fitness positive.
        double K = worst_seen > 0.0 ? 2.0 * worst_seen : 1.0;
        if (config.fitness_offset) K = std::max(K, *config.fitness_offset);
        for (std::size_t p = 0; p < P; ++p) fitness[p] = std::isfinite(lambdas[p]) ? K - lambdas[p] : 0.0;

        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

        auto tournament = [&]() {
            std::size_t winner = pick(rng);
            for (std::size_t t = 1; t < config.tournament_size; ++t) {
                const std::size_t challenger = pick(rng);
                if (fitness[challenger] > fitness[winner]) winner = challenger;
            }
            return winner;
        };

        std::vector<Genes> next;
        next.reserve(P);
        for (std::size_t e = 0; e < config.elite_count; ++e) next.push_back(population[order[e]]);
        while (next.size() < P) {
            Genes a = population[tournament()];
            Genes b = population[tournament()];
            if (n_genes > 1 && unit(rng) < config.crossover_rate) {
                std::uniform_int_distribution<std::size_t> cut(1, n_genes - 1);
                const std::size_t point = cut(rng);
                std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(point), a.end(),
                                 b.begin() + static_cast<std::ptrdiff_t>(point));
            }
            for (Genes* child : {&a, &b}) {
                for (auto& c : *child) {
                    if (unit(rng) < mutation_rate) c = allele(rng);
                }
            }
            next.push_back(std::move(a));
            if (next.size() < P) next.push_back(std::move(b));
        }
        population = std::move(next);
        evaluate_population(kernel, population, lambdas, config.threads);
        evaluations += P;
        stall = absorb() ? 0 : stall + 1;
        result.history.emplace_back(gen, best);
    }

    if (best_genes.empty()) throw NoMechanism("genetic search found no valid mechanism");
    if (config.local_search) {
        const double before = best;
        evaluations += polish(kernel, config.c_max, best_genes, best);
        if (improves(best, before)) result.history.emplace_back(result.history.back().first + 1, best);
    }
    CollapseResult described = describe_combination(pool, best_genes);
    described.history = std::move(result.history);
    described.evaluations = evaluations;
    return described;
}

}  // namespace framelimit

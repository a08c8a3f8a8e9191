#include <doctest.h>

#include <cmath>

#include "framelimit/errors.hpp"
#include "framelimit/mechanism_engine.hpp"
#include "support.hpp"

using namespace framelimit;
using framelimit::testing::benchmark;

namespace {

// Floors 1 and 2, storey-2 left beam, clockwise nodes at both base-storey
// corners and at the storey-2 left corner.
const Genes kMassOptimum{1, 1, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0};
// Storey-2 sway, storey-2 left beam and the clockwise node at its left corner.
const Genes kTriangularOptimum{0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0};

double section_rho(const MechanismPool& pool, const Genes& genes, const std::string& label) {
    const auto c = pool.combine(genes);
    for (std::size_t s = 0; s < pool.sections().size(); ++s) {
        if (pool.sections()[s].label() == label) return c.rho[s];
    }
    FAIL("no section " << label);
    return 0.0;
}

}  // namespace

TEST_CASE("benchmark pool layout") {
    const auto& doc = benchmark();
    const MechanismPool pool(doc.frame, doc.pattern("mass_proportional"));
    CHECK(pool.size() == 16);
    CHECK(pool.mechanisms()[0].label() == "floor(storey=0)");
    CHECK(pool.mechanisms()[2].label() == "beam(storey=1, bay=0)");
    CHECK(pool.mechanisms()[4].label() == "node(storey=0, line=0, +)");
    CHECK(pool.mechanisms()[5].label() == "node(storey=0, line=0, -)");

    // Only interior joints when corners are excluded.
    const MechanismPool strict(doc.frame, doc.pattern("mass_proportional"), PoolOptions{3});
    CHECK(strict.size() == 12);
}

TEST_CASE("elementary mechanism works") {
    const auto& doc = benchmark();
    const MechanismPool pool(doc.frame, doc.pattern("mass_proportional"));
    const auto& floor0 = pool.mechanisms()[0];
    CHECK(floor0.w_ext_h == doctest::Approx(3.0 * 800.0));
    CHECK(pool.mechanisms()[1].w_ext_h == doctest::Approx(3.0 * 400.0));
    const double x = *interior_hinge_abscissa(4.0, doc.frame.beam(1, 0).plastic_moment, 50.0);
    CHECK(pool.mechanisms()[2].w_ext_v == doctest::Approx(50.0 * 4.0 * x / 2.0));

    // Base-storey sway alone: six column hinges against the whole base shear.
    Genes g(16, 0);
    g[0] = 1;
    CHECK(pool.lambda0(g) == doctest::Approx(6.0 * doc.frame.column(0, 0).plastic_moment / 2400.0));

    // Beam mechanism rotations close the beam: left + span + right sum to zero.
    double sum = 0.0;
    for (const auto& [s, c] : pool.mechanisms()[2].rotations) sum += c;
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("benchmark optimum mechanisms") {
    const auto& doc = benchmark();
    SUBCASE("mass proportional") {
        const MechanismPool pool(doc.frame, doc.pattern("mass_proportional"));
        CHECK(pool.lambda0(kMassOptimum) == doctest::Approx(0.79961).epsilon(1e-5));
        const auto soft = pool.softening(kMassOptimum);
        CHECK(soft.heights[0] == doctest::Approx(3.0));
        CHECK(soft.heights[1] == doctest::Approx(6.0));
        CHECK(soft.gamma == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
        CHECK(section_rho(pool, kMassOptimum, "column(storey=0, line=1).bottom") == doctest::Approx(1.0));
        CHECK(section_rho(pool, kMassOptimum, "column(storey=0, line=1).top") == doctest::Approx(-1.0));
        CHECK(section_rho(pool, kMassOptimum, "beam(storey=0, bay=0).left") == doctest::Approx(-1.0));
        CHECK(section_rho(pool, kMassOptimum, "beam(storey=1, bay=0).right") == doctest::Approx(0.0691).epsilon(1e-3));
        CHECK(std::abs(section_rho(pool, kMassOptimum, "beam(storey=1, bay=0).left")) < kHingeCutoff);
        CHECK(pool.hinges(kMassOptimum).size() == 11);
    }
    SUBCASE("inverse triangular") {
        const MechanismPool pool(doc.frame, doc.pattern("inverse_triangular"));
        CHECK(pool.lambda0(kTriangularOptimum) == doctest::Approx(0.65513).epsilon(1e-5));
        const auto soft = pool.softening(kTriangularOptimum);
        CHECK(soft.heights[0] == doctest::Approx(0.0));
        CHECK(soft.heights[1] == doctest::Approx(3.0));
        CHECK(soft.h_max == doctest::Approx(3.0));
        CHECK(soft.gamma == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(pool.hinges(kTriangularOptimum).size() == 7);
    }
}

TEST_CASE("virtual work balance on random combinations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto f = framelimit::testing::random_frame(rng, {3, 4, framelimit::testing::Gravity::mixed});
        const MechanismPool pool(f, framelimit::testing::random_pattern(rng, f));
        const auto genes = framelimit::testing::random_genes(rng, pool.size(), 3);
        const auto c = pool.combine(genes);
        if (!c.is_mechanism()) {
            CHECK_FALSE(pool.try_lambda0(genes));
            continue;
        }
        const double lambda = pool.lambda0(genes);
        CHECK(std::abs(lambda * c.w_ext_h + c.w_ext_v - c.w_int) <= 1e-9 * c.w_int);
    }
}

TEST_CASE("scaling the lateral forces") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = framelimit::testing::random_frame(rng);
        auto p = framelimit::testing::random_pattern(rng, f);
        const MechanismPool a(f, p);
        const double alpha = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        for (auto& F : p.forces) F *= alpha;
        const MechanismPool b(f, p);
        Genes g = framelimit::testing::random_genes(rng, a.size(), 2);
        g[0] = 1;
        CHECK(b.lambda0(g) == doctest::Approx(a.lambda0(g) / alpha).epsilon(1e-10));
        CHECK(b.softening(g).gamma == doctest::Approx(a.softening(g).gamma / alpha).epsilon(1e-10));
    }
}

TEST_CASE("softening vanishes without gravity loads and not otherwise") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto gravity = trial % 2 ? framelimit::testing::Gravity::none : framelimit::testing::Gravity::positive;
        const auto f = framelimit::testing::random_frame(rng, {3, 4, gravity});
        const MechanismPool pool(f, framelimit::testing::random_pattern(rng, f));
        Genes g = framelimit::testing::random_genes(rng, pool.size(), 2);
        if (!pool.try_lambda0(g)) g[0] = 1;
        const double gamma = pool.softening(g).gamma;
        if (gravity == framelimit::testing::Gravity::none) {
            CHECK(gamma == 0.0);
        } else {
            CHECK(gamma > 0.0);
        }
    }
}

TEST_CASE("invalid gene vectors") {
    const auto& doc = benchmark();
    const MechanismPool pool(doc.frame, doc.pattern("mass_proportional"));
    CHECK_THROWS_AS(pool.lambda0(Genes(16, 0)), NoMechanism);
    CHECK_THROWS_AS(pool.lambda0(Genes(15, 0)), ValidationError);
    Genes negative(16, 0);
    negative[0] = -1;
    CHECK_THROWS_AS(pool.lambda0(negative), ValidationError);
    // Node mechanisms alone do no lateral work.
    Genes nodes(16, 0);
    nodes[6] = 2;
    CHECK_FALSE(pool.try_lambda0(nodes));
}

TEST_CASE("free-function wrappers agree with the pool") {
    const auto& doc = benchmark();
    const auto& p = doc.pattern("mass_proportional");
    CHECK(evaluate_lambda0(doc.frame, p, kMassOptimum) == MechanismPool(doc.frame, p).lambda0(kMassOptimum));
    CHECK(softening(doc.frame, p, kMassOptimum).gamma == doctest::Approx(1.0 / 6.0));
}

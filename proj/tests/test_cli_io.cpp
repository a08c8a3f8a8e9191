#include <doctest.h>

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "framelimit/errors.hpp"
#include "framelimit/pipeline.hpp"
#include "support.hpp"

using namespace framelimit;
using framelimit::testing::benchmark;
using framelimit::testing::data_path;
using nlohmann::json;

namespace {

json benchmark_json() {
    auto j = read_json_file(data_path("benchmark.json"));
    j["section_library"] = data_path("sections/european_h.json");
    j.erase("assessment");
    return j;
}

std::string error_of(const json& j) {
    try {
        parse_document(j);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("benchmark document") {
    const auto& doc = benchmark();
    CHECK(doc.patterns.size() == 2);
    CHECK(doc.frame.n_storeys() == 2);
    CHECK(doc.analysis.alpha_s == 0.15);
    CHECK(doc.analysis.method == SearchMethod::ga);
    REQUIRE(doc.assessment);
    REQUIRE(doc.assessment->spectrum);
    CHECK(doc.assessment->spectrum->T_C == 0.45);
    CHECK_THROWS_AS(doc.pattern("nope"), ValidationError);
}

TEST_CASE("document errors name the offending path") {
    SUBCASE("unknown key") {
        auto j = benchmark_json();
        j["frame"]["storey_height"] = 3.0;
        CHECK(error_of(j).find("$.frame.storey_height") != std::string::npos);
    }
    SUBCASE("unknown top-level key") {
        auto j = benchmark_json();
        j["extra"] = 1;
        CHECK(error_of(j).find("$.extra") != std::string::npos);
    }
    SUBCASE("missing section reference") {
        auto j = benchmark_json();
        j["frame"]["beam_sections"][1][0] = "IPE999";
        const auto e = error_of(j);
        CHECK(e.find("$.frame.beam_sections[1][0]") != std::string::npos);
        CHECK(e.find("IPE999") != std::string::npos);
    }
    SUBCASE("wrong type") {
        auto j = benchmark_json();
        j["patterns"][0]["total"] = "800";
        CHECK(error_of(j).find("$.patterns[0].total") != std::string::npos);
    }
    SUBCASE("unknown pattern kind") {
        auto j = benchmark_json();
        j["patterns"][1]["kind"] = "parabolic";
        CHECK(error_of(j).find("$.patterns[1].kind") != std::string::npos);
    }
    SUBCASE("bad analysis method") {
        auto j = benchmark_json();
        j["analysis"]["method"] = "annealing";
        CHECK(error_of(j).find("$.analysis.method") != std::string::npos);
    }
    SUBCASE("unknown GA key") {
        auto j = benchmark_json();
        j["analysis"]["ga"] = {{"populaton_size", 10}};
        CHECK(error_of(j).find("$.analysis.ga.populaton_size") != std::string::npos);
    }
    SUBCASE("inline spectrum with inverted corner periods") {
        auto j = benchmark_json();
        j["assessment"] = {{"spectrum", {{"ag_g", 0.2}, {"S", 1.2}, {"eta", 1}, {"F0", 2.4}, {"TB", 0.6}, {"TC", 0.45}, {"TD", 2.5}}}};
        CHECK(error_of(j).find("$.assessment.spectrum") != std::string::npos);
    }
}

TEST_CASE("inline sections and explicit forces") {
    json j = {
        {"sections", {{"S", {{"moment_of_inertia", 1e-4}, {"plastic_moment", 200.0}, {"elastic_modulus", 2.1e8}}}}},
        {"frame",
         {{"storey_heights", {3.0}},
          {"bay_lengths", {5.0}},
          {"beam_sections", json::array({json::array({"S"})})},
          {"column_sections", json::array({json::array({"S", "S"})})},
          {"vertical_loads", json::array({json::array({10.0})})}}},
        {"patterns", json::array({{{"name", "p"}, {"forces", json::array({100.0})}}})},
        {"analysis", {{"method", "exhaustive"}, {"node_min_members", 3}}}};
    const auto doc = parse_document(j);
    CHECK(doc.frame.beam(0, 0).plastic_moment == 200.0);
    CHECK(doc.pattern("p").forces == std::vector<double>{100.0});
    const auto r = analyze_pattern(doc, doc.pattern("p"));
    CHECK(r.collapse.lambda0 == doctest::Approx(4.0 * 200.0 / 300.0));
    CHECK(r.mechanism_labels.size() == 1);
}

TEST_CASE("section library search path") {
    auto j = benchmark_json();
    j["section_library"] = "european_h.json";
    CHECK_THROWS_AS(parse_document(j, "/nonexistent"), ValidationError);
    ::setenv(kSectionPathEnv, (std::string("/nonexistent:") + data_path("sections")).c_str(), 1);
    CHECK(parse_document(j, "/nonexistent").frame.beam(0, 0).plastic_moment == doctest::Approx(325.005));
    ::unsetenv(kSectionPathEnv);
}

TEST_CASE("spectrum files") {
    const auto s = load_spectrum(data_path("spectra/catania_soilB.json"));
    CHECK(s.ag_g * s.S == doctest::Approx(0.283).epsilon(1e-3));
    json bad = {{"ag_g", 0.2}, {"S", 1.2}, {"eta", 1}, {"F0", 2.4}, {"TB", 0.5}, {"TC", 0.45}, {"TD", 2.5}};
    CHECK_THROWS_AS(parse_spectrum(bad), ValidationError);
    bad["TB"] = 0.1;
    bad["Tc"] = 0.4;
    CHECK_THROWS_WITH_AS(parse_spectrum(bad), doctest::Contains("$.Tc"), ValidationError);
}

TEST_CASE("curve CSV") {
    auto doc = benchmark();
    doc.analysis.method = SearchMethod::exhaustive;
    const auto r = analyze_pattern(doc, doc.pattern("mass_proportional"));

    // A decimal-comma locale must not leak into the output.
    std::setlocale(LC_ALL, "de_DE.UTF-8");
    const auto text = curve_csv(r.curve);
    std::setlocale(LC_ALL, "C");

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "displacement_m,base_shear_kN");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(line.find(',', comma + 1) == std::string::npos);
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    REQUIRE(rows.size() == 52);
    CHECK(rows[0] == std::pair{0.0, 0.0});
    CHECK(rows[1].first == r.curve.u_y);
    CHECK(rows.back().first == r.curve.u_u);
    CHECK(rows.back().first == doctest::Approx(0.2995).epsilon(1e-3));
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const auto [u, v] = rows[i];
        CHECK(std::abs(v - (r.curve.V_by + r.curve.k_s * (u - r.curve.u_y))) <= 1e-9 * r.curve.V_by);
    }

    const auto path = std::filesystem::temp_directory_path() / "framelimit_curve_test.csv";
    write_curve_csv(r.curve, path);
    std::ifstream f(path);
    std::stringstream written;
    written << f.rdbuf();
    CHECK(written.str() == text);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_curve_csv(r.curve, "/nonexistent/dir/curve.csv"), Error);
}

TEST_CASE("report round trip and determinism") {
    const auto& doc = benchmark();
    auto run = [&] {
        std::vector<PatternReport> reports;
        for (const auto& p : doc.patterns) reports.push_back(analyze_pattern(doc, p, doc.assessment));
        auto j = report_json(reports, doc);
        return j;
    };
    auto a = run();
    auto b = run();
    const auto text = a.dump(2);
    CHECK(json::parse(text) == a);
    CHECK(json::parse(text).dump(2) == text);
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());

    const auto& mass = a["patterns"][0];
    CHECK(mass["name"] == "mass_proportional");
    CHECK(mass["collapse"]["lambda0"].get<double>() == doctest::Approx(0.7996).epsilon(5e-3));
    CHECK(mass["curve"]["u_u"].get<double>() == doctest::Approx(0.2995).epsilon(1e-2));
    CHECK(mass["curve"]["governing"] == "chord_rotation");
    CHECK(mass.contains("sdof"));
    CHECK(mass["verification"]["safety_factor"].get<double>() ==
          doctest::Approx(mass["sdof"]["d_u_star"].get<double>() / mass["verification"]["demand"].get<double>()));
}

TEST_CASE("unbounded displacements serialize as null") {
    auto doc = benchmark();
    doc.analysis.alpha_s = 0.15;
    for (auto& row : doc.frame.vertical_loads) {
        for (auto& q : row) q = 0.0;
    }
    const auto r = analyze_pattern(doc, doc.pattern("mass_proportional"));
    CHECK(r.curve.u_s == kUnbounded);
    const auto j = report_json({r}, doc);
    CHECK(j["patterns"][0]["curve"]["u_s"].is_null());
    CHECK(j["patterns"][0]["curve"]["u_u"].is_number());
}

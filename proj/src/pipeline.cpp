#include "framelimit/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>

#include "framelimit/errors.hpp"

namespace framelimit {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void append_number(std::string& out, double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
}

json genes_json(const std::vector<std::string>& labels, const Genes& genes) {
    json out = json::array();
    for (std::size_t k = 0; k < genes.size(); ++k) {
        if (genes[k] == 0) continue;
        out.push_back({{"mechanism", labels.at(k)}, {"multiplicity", genes[k]}});
    }
    return out;
}

json collapse_json(const PatternReport& r) {
    const auto& c = r.collapse;
    json hinges = json::array();
    for (const auto& h : c.hinges) {
        const auto& cap = r.hinges.at(h.section_index);
        hinges.push_back({{"section", h.section.label()},
                          {"rho", h.rho},
                          {"shear_span", cap.shear_span},
                          {"theta_y", cap.theta_y},
                          {"theta_u", cap.theta_u},
                          {"u_ultimate", number_or_null(cap.u_ultimate)}});
    }
    return {{"method", to_string(r.method)},
            {"pool_size", r.mechanism_labels.size()},
            {"genes", c.best_genes},
            {"mechanisms", genes_json(r.mechanism_labels, c.best_genes)},
            {"lambda0", c.lambda0},
            {"gamma", c.softening.gamma},
            {"heights", c.softening.heights},
            {"h_max", c.softening.h_max},
            {"hinges", std::move(hinges)},
            {"evaluations", c.evaluations}};
}

json curve_json(const CapacityCurve& c, const std::vector<HingeCapacity>& hinges) {
    json governing_sections = json::array();
    for (auto s : c.governing_sections) governing_sections.push_back(hinges.at(s).section.label());
    return {{"k_e", c.k_e},
            {"u_e", c.u_e},
            {"u_y", c.u_y},
            {"V_by", c.V_by},
            {"k_s", c.k_s},
            {"u_s", number_or_null(c.u_s)},
            {"u_c", number_or_null(c.u_c)},
            {"u_u", number_or_null(c.u_u)},
            {"governing", to_string(c.governing)},
            {"governing_sections", std::move(governing_sections)}};
}

json verification_json(const Verification& v) {
    const auto& s = v.sdof;
    const auto& r = v.result;
    json sdof = {{"Gamma", s.gamma_part}, {"m_star", s.m_star},     {"k_star", s.k_star},
                 {"F_u_star", s.F_u_star}, {"d_y_star", s.d_y_star}, {"d_u_star", s.d_u_star},
                 {"T_star", s.T_star},     {"shape", v.shape},       {"floor_masses", v.floor_masses}};
    json verification = {{"Se", r.Se_T},
                         {"d_e_star", r.d_e_star},
                         {"q_star", r.q_star},
                         {"demand", r.demand},
                         {"safety_factor", r.safety_factor},
                         {"regime", to_string(r.regime)},
                         {"warnings", r.warnings}};
    const auto& p = v.spectrum;
    verification["spectrum"] = {{"ag_g", p.ag_g}, {"S", p.S},   {"eta", p.eta}, {"F0", p.F0},
                                {"TB", p.T_B},     {"TC", p.T_C}, {"TD", p.T_D}};
    return {{"sdof", std::move(sdof)}, {"verification", std::move(verification)}};
}

}  // namespace

std::vector<double> sdof_shape(const FrameDocument& doc, ShapeSource source, std::span<const double> masses) {
    if (source == ShapeSource::fundamental_mode) return fundamental_mode_shape(doc.frame, masses);
    LateralLoadPattern inertial;
    inertial.name = "mass_proportional";
    inertial.forces.assign(masses.begin(), masses.end());
    return solve_elastic(doc.frame, inertial).shape;
}

PatternReport analyze_pattern(const FrameDocument& doc, const LateralLoadPattern& pattern,
                              const std::optional<AssessmentOptions>& assessment) {
    const auto start = std::chrono::steady_clock::now();
    const auto& opts = doc.analysis;

    PatternReport r;
    r.pattern = pattern.name;
    r.forces = pattern.forces;
    r.method = opts.method;

    const MechanismPool pool(doc.frame, pattern, opts.pool);
    for (const auto& m : pool.mechanisms()) r.mechanism_labels.push_back(m.label());
    if (opts.method == SearchMethod::exhaustive) {
        r.collapse = search_exhaustive(pool, opts.c_max, opts.budget);
    } else {
        GAConfig ga = opts.ga;
        ga.c_max = opts.c_max;
        r.collapse = search_ga(pool, ga);
    }

    r.elastic = solve_elastic(doc.frame, pattern);
    const auto bilinear = build_bilinear(r.elastic, r.collapse, pattern);
    r.hinges = hinge_capacities(doc.frame, r.collapse, bilinear);
    r.curve = truncate(bilinear, displacement_shear_drop(bilinear, opts.alpha_s), r.hinges, opts.curve_samples);

    if (assessment) {
        if (!assessment->spectrum) throw ValidationError("$.assessment: no spectrum given");
        Verification v;
        v.spectrum = *assessment->spectrum;
        v.floor_masses = assessment->floor_masses.value_or(default_floor_masses(doc.frame));
        v.shape = sdof_shape(doc, assessment->shape, v.floor_masses);
        v.sdof = equivalent_sdof(r.curve, v.shape, v.floor_masses);
        v.result = demand_and_verify(v.sdof, v.spectrum);
        r.verification = std::move(v);
    }

    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

json report_json(const std::vector<PatternReport>& reports, const FrameDocument& doc) {
    json patterns = json::array();
    json timing = json::object();
    for (const auto& r : reports) {
        json entry = {{"name", r.pattern},
                      {"forces", r.forces},
                      {"elastic", {{"floor_displacements", r.elastic.floor_displacements},
                                   {"u_e", r.elastic.u_e},
                                   {"k_e", r.elastic.k_e}}},
                      {"collapse", collapse_json(r)},
                      {"curve", curve_json(r.curve, r.hinges)}};
        if (r.verification) entry.update(verification_json(*r.verification));
        patterns.push_back(std::move(entry));
        timing[r.pattern] = {{"elapsed_ms", r.elapsed_ms}};
    }
    return {{"analysis",
             {{"alpha_s", doc.analysis.alpha_s},
              {"c_max", doc.analysis.c_max},
              {"method", to_string(doc.analysis.method)},
              {"seed", doc.analysis.ga.seed}}},
            {"patterns", std::move(patterns)},
            {"timing", std::move(timing)}};
}

std::string curve_csv(const CapacityCurve& curve) {
    if (!curve.truncated()) throw ValidationError("curve export needs a truncated capacity curve");
    std::string out = "displacement_m,base_shear_kN\n";
    for (const auto& [u, v] : curve.points) {
        append_number(out, u);
        out += ',';
        append_number(out, v);
        out += '\n';
    }
    return out;
}

void write_curve_csv(const CapacityCurve& curve, const std::filesystem::path& path) {
    const auto text = curve_csv(curve);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace framelimit

#include "framelimit/document.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "framelimit/errors.hpp"

namespace framelimit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ValidationError(path + ": " + message);
}

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

// Object accessor that remembers which keys were consumed.
class Fields {
public:
    Fields(const json& object, std::string path) : object_(object), path_(std::move(path)) {
        if (!object_.is_object()) fail(path_, "expected an object");
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = object_.find(key);
        return it == object_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* value = find(key);
        if (!value) fail(child(path_, key), "missing required field");
        return *value;
    }

    std::string path(const std::string& key) const { return child(path_, key); }
    const std::string& path() const { return path_; }

    void finish() const {
        for (const auto& [key, value] : object_.items()) {
            if (!seen_.contains(key)) fail(child(path_, key), "unknown key '" + key + "'");
        }
    }

private:
    const json& object_;
    std::string path_;
    std::set<std::string> seen_;
};

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) fail(path, "expected a number");
    return value.get<double>();
}

double as_positive(const json& value, const std::string& path) {
    const double v = as_number(value, path);
    if (!(v > 0.0)) fail(path, "must be positive");
    return v;
}

std::int64_t as_integer(const json& value, const std::string& path) {
    if (!value.is_number_integer()) fail(path, "expected an integer");
    return value.get<std::int64_t>();
}

std::size_t as_count(const json& value, const std::string& path) {
    const auto v = as_integer(value, path);
    if (v < 0) fail(path, "must be non-negative");
    return static_cast<std::size_t>(v);
}

std::string as_string(const json& value, const std::string& path) {
    if (!value.is_string()) fail(path, "expected a string");
    return value.get<std::string>();
}

std::vector<double> as_numbers(const json& value, const std::string& path) {
    if (!value.is_array()) fail(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) out.push_back(as_number(value[i], child(path, i)));
    return out;
}

template <class T, class F>
Grid<T> as_grid(const json& value, const std::string& path, F&& element) {
    if (!value.is_array()) fail(path, "expected an array of rows");
    Grid<T> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        const auto row_path = child(path, i);
        if (!value[i].is_array()) fail(row_path, "expected an array");
        std::vector<T> row;
        for (std::size_t j = 0; j < value[i].size(); ++j) row.push_back(element(value[i][j], child(row_path, j)));
        out.push_back(std::move(row));
    }
    return out;
}

SectionProperties parse_section(const json& value, const std::string& path, std::optional<double> default_modulus,
                                std::optional<double> default_fy) {
    Fields f(value, path);
    SectionProperties s;
    s.moment_of_inertia = as_positive(f.require("moment_of_inertia"), f.path("moment_of_inertia"));
    if (const json* v = f.find("elastic_modulus")) {
        s.elastic_modulus = as_positive(*v, f.path("elastic_modulus"));
    } else if (default_modulus) {
        s.elastic_modulus = *default_modulus;
    } else {
        fail(f.path("elastic_modulus"), "missing and no material default given");
    }
    if (const json* v = f.find("plastic_modulus")) s.plastic_modulus = as_positive(*v, f.path("plastic_modulus"));
    if (const json* v = f.find("yield_stress")) {
        s.yield_stress = as_positive(*v, f.path("yield_stress"));
    } else if (s.plastic_modulus && default_fy) {
        s.yield_stress = default_fy;
    }
    if (const json* v = f.find("plastic_moment")) {
        s.plastic_moment = as_positive(*v, f.path("plastic_moment"));
    } else if (s.plastic_modulus && s.yield_stress) {
        s.plastic_moment = *s.plastic_modulus * *s.yield_stress;
    } else {
        fail(f.path("plastic_moment"), "missing and not derivable from plastic_modulus and yield_stress");
    }
    f.finish();
    try {
        s.validate(path);
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    return s;
}

LateralLoadPattern parse_pattern(const json& value, const std::string& path, const FrameSpec& frame) {
    Fields f(value, path);
    LateralLoadPattern p;
    p.name = as_string(f.require("name"), f.path("name"));
    const json* kind = f.find("kind");
    const json* forces = f.find("forces");
    const json* total = f.find("total");
    if (kind && forces) fail(path, "give either 'kind' and 'total' or 'forces'");
    if (kind) {
        const auto text = as_string(*kind, f.path("kind"));
        const auto parsed = parse_pattern_kind(text);
        if (!parsed) fail(f.path("kind"), "unknown pattern kind '" + text + "'");
        if (!total) fail(f.path("total"), "missing required field");
        p.forces = make_pattern(frame, *parsed, as_positive(*total, f.path("total"))).forces;
    } else if (forces) {
        if (total) fail(f.path("total"), "only allowed together with 'kind'");
        p.forces = as_numbers(*forces, f.path("forces"));
    } else {
        fail(path, "pattern needs 'kind' or 'forces'");
    }
    f.finish();
    try {
        p.validate(frame.n_storeys());
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    return p;
}

GAConfig parse_ga(const json& value, const std::string& path, GAConfig ga) {
    Fields f(value, path);
    if (const json* v = f.find("population_size")) ga.population_size = as_count(*v, f.path("population_size"));
    if (const json* v = f.find("generations")) ga.generations = as_count(*v, f.path("generations"));
    if (const json* v = f.find("crossover_rate")) ga.crossover_rate = as_number(*v, f.path("crossover_rate"));
    if (const json* v = f.find("mutation_rate")) ga.mutation_rate = as_number(*v, f.path("mutation_rate"));
    if (const json* v = f.find("elite_count")) ga.elite_count = as_count(*v, f.path("elite_count"));
    if (const json* v = f.find("tournament_size")) ga.tournament_size = as_count(*v, f.path("tournament_size"));
    if (const json* v = f.find("fitness_offset")) ga.fitness_offset = as_number(*v, f.path("fitness_offset"));
    if (const json* v = f.find("stall_limit")) ga.stall_limit = as_count(*v, f.path("stall_limit"));
    if (const json* v = f.find("local_search")) {
        if (!v->is_boolean()) fail(f.path("local_search"), "expected a boolean");
        ga.local_search = v->get<bool>();
    }
    if (const json* v = f.find("threads")) ga.threads = static_cast<unsigned>(as_count(*v, f.path("threads")));
    f.finish();
    try {
        ga.validate();
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    return ga;
}

AnalysisOptions parse_analysis(const json& value, const std::string& path) {
    Fields f(value, path);
    AnalysisOptions a;
    if (const json* v = f.find("alpha_s")) {
        a.alpha_s = as_number(*v, f.path("alpha_s"));
        if (!(a.alpha_s >= 0.0 && a.alpha_s < 1.0)) fail(f.path("alpha_s"), "must lie in [0, 1)");
    }
    if (const json* v = f.find("c_max")) {
        const auto c = as_integer(*v, f.path("c_max"));
        if (c < 1) fail(f.path("c_max"), "must be at least 1");
        a.c_max = static_cast<int>(c);
    }
    if (const json* v = f.find("method")) {
        const auto text = as_string(*v, f.path("method"));
        if (text == "ga") {
            a.method = SearchMethod::ga;
        } else if (text == "exhaustive") {
            a.method = SearchMethod::exhaustive;
        } else {
            fail(f.path("method"), "expected 'ga' or 'exhaustive'");
        }
    }
    if (const json* v = f.find("seed")) {
        if (!v->is_number_unsigned()) fail(f.path("seed"), "expected a non-negative integer");
        a.ga.seed = v->get<std::uint64_t>();
    }
    if (const json* v = f.find("budget")) a.budget = as_positive(*v, f.path("budget"));
    if (const json* v = f.find("node_min_members")) {
        const auto n = as_integer(*v, f.path("node_min_members"));
        if (n < 2 || n > 4) fail(f.path("node_min_members"), "must lie in [2, 4]");
        a.pool.node_min_members = static_cast<int>(n);
    }
    if (const json* v = f.find("curve_samples")) {
        a.curve_samples = as_count(*v, f.path("curve_samples"));
        if (a.curve_samples < 1) fail(f.path("curve_samples"), "must be at least 1");
    }
    if (const json* v = f.find("ga")) a.ga = parse_ga(*v, f.path("ga"), a.ga);
    a.ga.c_max = a.c_max;
    f.finish();
    return a;
}

AssessmentOptions parse_assessment(const json& value, const std::string& path, const fs::path& base_dir,
                                   std::size_t n_storeys) {
    Fields f(value, path);
    AssessmentOptions a;
    if (const json* v = f.find("floor_masses")) {
        auto masses = as_numbers(*v, f.path("floor_masses"));
        if (masses.size() != n_storeys) fail(f.path("floor_masses"), "expected one mass per floor");
        for (std::size_t i = 0; i < masses.size(); ++i) {
            if (!(masses[i] > 0.0)) fail(child(f.path("floor_masses"), i), "must be positive");
        }
        a.floor_masses = std::move(masses);
    }
    if (const json* v = f.find("shape")) {
        const auto text = as_string(*v, f.path("shape"));
        if (text == "fundamental_mode") {
            a.shape = ShapeSource::fundamental_mode;
        } else if (text == "elastic") {
            a.shape = ShapeSource::elastic;
        } else {
            fail(f.path("shape"), "expected 'fundamental_mode' or 'elastic'");
        }
    }
    const json* inline_spec = f.find("spectrum");
    const json* spec_file = f.find("spectrum_file");
    if (inline_spec && spec_file) fail(path, "give either 'spectrum' or 'spectrum_file'");
    if (inline_spec) a.spectrum = parse_spectrum(*inline_spec, f.path("spectrum"));
    if (spec_file) {
        fs::path p = as_string(*spec_file, f.path("spectrum_file"));
        if (p.is_relative()) p = base_dir / p;
        a.spectrum = load_spectrum(p);
    }
    f.finish();
    return a;
}

}  // namespace

std::string to_string(SearchMethod m) { return m == SearchMethod::ga ? "ga" : "exhaustive"; }

std::string to_string(ShapeSource s) { return s == ShapeSource::fundamental_mode ? "fundamental_mode" : "elastic"; }

const LateralLoadPattern& FrameDocument::pattern(const std::string& name) const {
    for (const auto& p : patterns) {
        if (p.name == name) return p;
    }
    throw ValidationError("no pattern named '" + name + "'");
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

fs::path resolve_library(const std::string& name, const fs::path& base_dir) {
    const fs::path p(name);
    if (p.is_absolute()) return p;
    std::vector<fs::path> candidates{base_dir / p};
    if (const char* env = std::getenv(kSectionPathEnv)) {
        std::stringstream dirs(env);
        std::string dir;
        while (std::getline(dirs, dir, ':')) {
            if (!dir.empty()) candidates.push_back(fs::path(dir) / p);
        }
    }
    for (const auto& c : candidates) {
        if (fs::exists(c)) return c;
    }
    throw ValidationError("section library '" + name + "' not found next to the document or in $" +
                          kSectionPathEnv);
}

SectionTable parse_section_library(const json& doc, const std::string& where, std::optional<double> default_modulus,
                                   std::optional<double> default_fy) {
    Fields f(doc, where);
    f.find("name");
    f.find("note");
    const json& profiles = f.require("profiles");
    if (!profiles.is_object()) fail(f.path("profiles"), "expected an object");
    SectionTable table;
    for (const auto& [name, value] : profiles.items()) {
        table.emplace(name, parse_section(value, child(f.path("profiles"), name), default_modulus, default_fy));
    }
    f.finish();
    return table;
}

SpectrumParams parse_spectrum(const json& doc, const std::string& path) {
    Fields f(doc, path);
    f.find("name");
    f.find("note");
    SpectrumParams s;
    s.ag_g = as_number(f.require("ag_g"), f.path("ag_g"));
    s.S = as_number(f.require("S"), f.path("S"));
    s.eta = as_number(f.require("eta"), f.path("eta"));
    s.F0 = as_number(f.require("F0"), f.path("F0"));
    s.T_B = as_number(f.require("TB"), f.path("TB"));
    s.T_C = as_number(f.require("TC"), f.path("TC"));
    s.T_D = as_number(f.require("TD"), f.path("TD"));
    f.finish();
    try {
        s.validate();
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
    return s;
}

SpectrumParams load_spectrum(const fs::path& path) { return parse_spectrum(read_json_file(path), path.string()); }

FrameDocument parse_document(const json& doc, const fs::path& base_dir) {
    FrameDocument out;
    out.base_dir = base_dir;
    Fields top(doc, "$");

    std::optional<double> default_modulus, default_fy;
    if (const json* m = top.find("material")) {
        Fields f(*m, top.path("material"));
        if (const json* v = f.find("elastic_modulus")) default_modulus = as_positive(*v, f.path("elastic_modulus"));
        if (const json* v = f.find("yield_stress")) default_fy = as_positive(*v, f.path("yield_stress"));
        f.finish();
    }

    SectionTable sections;
    if (const json* lib = top.find("section_library")) {
        const auto name = as_string(*lib, top.path("section_library"));
        fs::path file;
        try {
            file = resolve_library(name, base_dir);
        } catch (const ValidationError& e) {
            fail(top.path("section_library"), e.what());
        }
        sections = parse_section_library(read_json_file(file), file.string(), default_modulus, default_fy);
    }
    if (const json* inline_sections = top.find("sections")) {
        if (!inline_sections->is_object()) fail(top.path("sections"), "expected an object");
        for (const auto& [name, value] : inline_sections->items()) {
            sections.insert_or_assign(name, parse_section(value, child(top.path("sections"), name), default_modulus,
                                                          default_fy));
        }
    }

    {
        Fields f(top.require("frame"), top.path("frame"));
        FrameSpec& frame = out.frame;
        frame.storey_heights = as_numbers(f.require("storey_heights"), f.path("storey_heights"));
        frame.bay_lengths = as_numbers(f.require("bay_lengths"), f.path("bay_lengths"));
        auto section_name = [&](const json& v, const std::string& p) {
            auto name = as_string(v, p);
            if (!sections.contains(name)) fail(p, "unknown section '" + name + "'");
            return name;
        };
        frame.beam_sections = as_grid<SectionRef>(f.require("beam_sections"), f.path("beam_sections"), section_name);
        frame.column_sections =
            as_grid<SectionRef>(f.require("column_sections"), f.path("column_sections"), section_name);
        frame.vertical_loads = as_grid<double>(f.require("vertical_loads"), f.path("vertical_loads"), as_number);
        if (const json* g = f.find("gravity_accel")) frame.gravity_accel = as_positive(*g, f.path("gravity_accel"));
        f.finish();
        frame.sections = std::move(sections);
        try {
            frame.validate();
        } catch (const ValidationError& e) {
            fail(top.path("frame"), e.what());
        }
    }

    const json& patterns = top.require("patterns");
    if (!patterns.is_array() || patterns.empty()) fail(top.path("patterns"), "expected a non-empty array");
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        auto p = parse_pattern(patterns[k], child(top.path("patterns"), k), out.frame);
        for (const auto& existing : out.patterns) {
            if (existing.name == p.name) fail(child(top.path("patterns"), k), "duplicate pattern name");
        }
        out.patterns.push_back(std::move(p));
    }

    if (const json* a = top.find("analysis")) out.analysis = parse_analysis(*a, top.path("analysis"));
    if (const json* a = top.find("assessment")) {
        out.assessment = parse_assessment(*a, top.path("assessment"), base_dir, out.frame.n_storeys());
    }
    top.finish();
    return out;
}

FrameDocument load_document(const fs::path& path) {
    return parse_document(read_json_file(path), path.parent_path());
}

}  // namespace framelimit

#include "framelimit/frame_model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "framelimit/errors.hpp"

namespace framelimit {

namespace {

const SectionProperties& lookup(const SectionTable& table, const SectionRef& ref) {
    auto it = table.find(ref);
    if (it == table.end()) throw ValidationError("unknown section '" + ref + "'");
    return it->second;
}

void require(bool condition, const std::string& message) {
    if (!condition) throw ValidationError(message);
}

template <class T>
void check_grid(const Grid<T>& grid, std::size_t rows, std::size_t cols, const char* name) {
    require(grid.size() == rows, std::string(name) + ": expected " + std::to_string(rows) + " rows");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i].size() == cols, std::string(name) + "[" + std::to_string(i) + "]: expected " +
                                            std::to_string(cols) + " entries");
    }
}

}  // namespace

SectionProperties SectionProperties::from_profile(double moment_of_inertia, double plastic_modulus,
                                                  double yield_stress, double elastic_modulus) {
    SectionProperties s;
    s.moment_of_inertia = moment_of_inertia;
    s.plastic_modulus = plastic_modulus;
    s.yield_stress = yield_stress;
    s.plastic_moment = plastic_modulus * yield_stress;
    s.elastic_modulus = elastic_modulus;
    return s;
}

void SectionProperties::validate(const std::string& name) const {
    require(moment_of_inertia > 0.0, "section '" + name + "': moment_of_inertia must be positive");
    require(plastic_moment > 0.0, "section '" + name + "': plastic_moment must be positive");
    require(elastic_modulus > 0.0, "section '" + name + "': elastic_modulus must be positive");
    if (plastic_modulus && yield_stress) {
        const double derived = *plastic_modulus * *yield_stress;
        require(std::abs(plastic_moment - derived) <= 1e-9 * std::abs(derived),
                "section '" + name + "': plastic_moment differs from plastic_modulus * yield_stress");
    }
}

const SectionProperties& FrameSpec::beam(std::size_t storey, std::size_t bay) const {
    return lookup(sections, beam_sections.at(storey).at(bay));
}

const SectionProperties& FrameSpec::column(std::size_t storey, std::size_t line) const {
    return lookup(sections, column_sections.at(storey).at(line));
}

double FrameSpec::floor_level(std::size_t storey) const {
    return std::accumulate(storey_heights.begin(), storey_heights.begin() + storey + 1, 0.0);
}

double FrameSpec::floor_gravity_load(std::size_t storey) const {
    double w = 0.0;
    for (std::size_t j = 0; j < n_bays(); ++j) w += vertical_loads[storey][j] * bay_lengths[j];
    return w;
}

void FrameSpec::validate() const {
    require(n_storeys() >= 1, "frame needs at least one storey");
    require(n_bays() >= 1, "frame needs at least two columns");
    for (std::size_t i = 0; i < n_storeys(); ++i) {
        require(storey_heights[i] > 0.0, "storey_heights[" + std::to_string(i) + "] must be positive");
    }
    for (std::size_t j = 0; j < n_bays(); ++j) {
        require(bay_lengths[j] > 0.0, "bay_lengths[" + std::to_string(j) + "] must be positive");
    }
    require(gravity_accel > 0.0, "gravity_accel must be positive");
    check_grid(beam_sections, n_storeys(), n_bays(), "beam_sections");
    check_grid(column_sections, n_storeys(), n_columns(), "column_sections");
    check_grid(vertical_loads, n_storeys(), n_bays(), "vertical_loads");
    for (const auto& [name, props] : sections) props.validate(name);
    for (std::size_t i = 0; i < n_storeys(); ++i) {
        for (std::size_t j = 0; j < n_columns(); ++j) column(i, j);
        for (std::size_t j = 0; j < n_bays(); ++j) {
            const double q = vertical_loads[i][j];
            const auto where = "vertical_loads[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            require(std::isfinite(q) && q >= 0.0, where + " must be non-negative");
            // A fixed-ended beam collapses under q >= 16 M_b / L^2 without any lateral load.
            const double length = bay_lengths[j];
            require(q * length * length < 16.0 * beam(i, j).plastic_moment,
                    where + " exceeds the gravity collapse load of the beam");
        }
    }
}

double LateralLoadPattern::total() const {
    return std::accumulate(forces.begin(), forces.end(), 0.0);
}

void LateralLoadPattern::validate(std::size_t n_storeys) const {
    require(forces.size() == n_storeys, "pattern '" + name + "': expected " + std::to_string(n_storeys) +
                                            " floor forces");
    bool any_positive = false;
    for (double f : forces) {
        require(std::isfinite(f) && f >= 0.0, "pattern '" + name + "': forces must be non-negative");
        any_positive = any_positive || f > 0.0;
    }
    require(any_positive, "pattern '" + name + "': at least one floor force must be positive");
}

LateralLoadPattern make_pattern(const FrameSpec& frame, PatternKind kind, double total) {
    require(total > 0.0, "pattern total must be positive");
    const std::size_t n = frame.n_storeys();
    LateralLoadPattern pattern;
    pattern.name = to_string(kind);
    pattern.forces.assign(n, 0.0);
    std::vector<double> weights(n, 1.0);
    if (kind == PatternKind::inverse_triangular) {
        for (std::size_t i = 0; i < n; ++i) weights[i] = frame.floor_level(i);
    }
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) pattern.forces[i] = total * weights[i] / sum;
    return pattern;
}

std::optional<PatternKind> parse_pattern_kind(std::string_view text) {
    if (text == "mass_proportional") return PatternKind::mass_proportional;
    if (text == "inverse_triangular") return PatternKind::inverse_triangular;
    return std::nullopt;
}

std::string to_string(PatternKind kind) {
    return kind == PatternKind::mass_proportional ? "mass_proportional" : "inverse_triangular";
}

std::string to_string(SectionKind kind) {
    switch (kind) {
        case SectionKind::column_end: return "column_end";
        case SectionKind::beam_end: return "beam_end";
        case SectionKind::beam_span: return "beam_span";
    }
    return {};
}

std::string to_string(MemberEnd end) {
    switch (end) {
        case MemberEnd::bottom: return "bottom";
        case MemberEnd::top: return "top";
        case MemberEnd::left: return "left";
        case MemberEnd::right: return "right";
        case MemberEnd::span: return "span";
    }
    return {};
}

std::string CriticalSection::label() const {
    std::ostringstream out;
    if (kind == SectionKind::column_end) {
        out << "column(storey=" << storey << ", line=" << index << ")." << to_string(end);
    } else if (kind == SectionKind::beam_end) {
        out << "beam(storey=" << storey << ", bay=" << index << ")." << to_string(end);
    } else {
        out << "beam(storey=" << storey << ", bay=" << index << ").span@" << x;
    }
    return out.str();
}

std::optional<double> interior_hinge_abscissa(double length, double plastic_moment, double q) {
    if (q <= 0.0 || q * length * length <= 4.0 * plastic_moment) return std::nullopt;
    const double x = length - 2.0 * std::sqrt(plastic_moment / q);
    if (!(x > 0.0)) return std::nullopt;
    return x;
}

std::vector<CriticalSection> enumerate_critical_sections(const FrameSpec& frame) {
    std::vector<CriticalSection> out;
    for (std::size_t i = 0; i < frame.n_storeys(); ++i) {
        for (std::size_t j = 0; j < frame.n_columns(); ++j) {
            for (MemberEnd end : {MemberEnd::bottom, MemberEnd::top}) {
                out.push_back({SectionKind::column_end, i, j, end, 0.0, frame.column(i, j).plastic_moment,
                               frame.column_sections[i][j]});
            }
        }
        for (std::size_t j = 0; j < frame.n_bays(); ++j) {
            const auto& props = frame.beam(i, j);
            const auto& ref = frame.beam_sections[i][j];
            const double length = frame.bay_lengths[j];
            out.push_back({SectionKind::beam_end, i, j, MemberEnd::left, 0.0, props.plastic_moment, ref});
            if (auto x = interior_hinge_abscissa(length, props.plastic_moment, frame.vertical_loads[i][j])) {
                out.push_back({SectionKind::beam_span, i, j, MemberEnd::span, *x, props.plastic_moment, ref});
            }
            out.push_back({SectionKind::beam_end, i, j, MemberEnd::right, length, props.plastic_moment, ref});
        }
    }
    return out;
}

}  // namespace framelimit

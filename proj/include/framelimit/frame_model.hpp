#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace framelimit {

template <class T>
using Grid = std::vector<std::vector<T>>;

using SectionRef = std::string;

/// Flexural properties of a member cross section.
///
/// Units: I in m^4, M_p in kN*m, E in kPa, W_pl in m^3, f_y in kPa.
struct SectionProperties {
    double moment_of_inertia = 0.0;
    double plastic_moment = 0.0;
    double elastic_modulus = 0.0;
    std::optional<double> plastic_modulus;
    std::optional<double> yield_stress;

    /// Builds a section whose plastic moment is W_pl * f_y.
    static SectionProperties from_profile(double moment_of_inertia, double plastic_modulus,
                                          double yield_stress, double elastic_modulus);

    void validate(const std::string& name) const;
};

using SectionTable = std::map<SectionRef, SectionProperties, std::less<>>;

/// Regular planar frame with clamped column bases.
///
/// Storeys are indexed bottom-up from 0, column lines and bays left to right
/// from 0. Bay j spans between column lines j and j + 1. Loads q are per unit
/// length and positive downwards.
struct FrameSpec {
    std::vector<double> storey_heights;
    std::vector<double> bay_lengths;
    Grid<SectionRef> beam_sections;    // n_storeys x n_bays
    Grid<SectionRef> column_sections;  // n_storeys x n_columns
    Grid<double> vertical_loads;       // n_storeys x n_bays, kN/m
    double gravity_accel = 9.81;
    SectionTable sections;

    std::size_t n_storeys() const noexcept { return storey_heights.size(); }
    std::size_t n_bays() const noexcept { return bay_lengths.size(); }
    std::size_t n_columns() const noexcept { return bay_lengths.size() + 1; }

    const SectionProperties& beam(std::size_t storey, std::size_t bay) const;
    const SectionProperties& column(std::size_t storey, std::size_t line) const;

    /// Absolute height of the floor on top of `storey`.
    double floor_level(std::size_t storey) const;

    /// Sum over the bays of q * L for one floor, kN.
    double floor_gravity_load(std::size_t storey) const;

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Horizontal forces at the floors, kN, positive rightwards, bottom floor first.
struct LateralLoadPattern {
    std::vector<double> forces;
    std::string name;

    double total() const;
    void validate(std::size_t n_storeys) const;
};

enum class PatternKind { mass_proportional, inverse_triangular };

LateralLoadPattern make_pattern(const FrameSpec& frame, PatternKind kind, double total);

std::optional<PatternKind> parse_pattern_kind(std::string_view text);
std::string to_string(PatternKind kind);

enum class SectionKind { column_end, beam_end, beam_span };
enum class MemberEnd { bottom, top, left, right, span };

/// A section where a plastic hinge may form.
///
/// `index` is the column line for column ends and the bay for beam sections.
/// `x` is the distance from the left end of the beam for span sections.
struct CriticalSection {
    SectionKind kind = SectionKind::column_end;
    std::size_t storey = 0;
    std::size_t index = 0;
    MemberEnd end = MemberEnd::bottom;
    double x = 0.0;
    double plastic_moment = 0.0;
    SectionRef section_ref;

    bool is_column() const noexcept { return kind == SectionKind::column_end; }
    std::string label() const;
};

std::string to_string(SectionKind kind);
std::string to_string(MemberEnd end);

/// Abscissa of the sagging hinge of a beam carrying q with hogging plastic
/// moments at both ends, or nothing when q <= 4 M_b / L^2.
std::optional<double> interior_hinge_abscissa(double length, double plastic_moment, double q);

/// Column ends, beam ends and interior beam sections in storey-major order.
std::vector<CriticalSection> enumerate_critical_sections(const FrameSpec& frame);

}  // namespace framelimit

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "framelimit/collapse_search.hpp"
#include "framelimit/elastic_analysis.hpp"
#include "framelimit/frame_model.hpp"

namespace framelimit {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultAlphaS = 0.15;
inline constexpr std::size_t kDefaultSofteningSamples = 50;

enum class Governing { none, shear_drop, chord_rotation };

std::string to_string(Governing g);

/// Elastic branch up to (u_y, V_by) followed by a linear softening branch.
struct CapacityCurve {
    double k_e = 0.0;
    double u_e = 0.0;
    double u_y = 0.0;
    double V_by = 0.0;
    double k_s = 0.0;
    double lambda0 = 0.0;
    double gamma = 0.0;
    double total_force = 0.0;
    double h_max = 0.0;

    // Filled by truncate().
    double u_s = kUnbounded;
    double u_c = kUnbounded;
    double u_u = kUnbounded;
    Governing governing = Governing::none;
    std::vector<std::size_t> governing_sections;  // hinges reaching u_c first (ties included)
    std::vector<std::pair<double, double>> points;

    double base_shear(double u) const;
    bool truncated() const noexcept { return governing != Governing::none; }
};

struct HingeCapacity {
    CriticalSection section;
    double shear_span = 0.0;
    double theta_y = 0.0;
    double theta_u = 0.0;
    double rho = 0.0;  // |net rotation coefficient|
    double u_ultimate = kUnbounded;

    bool unbounded() const noexcept { return u_ultimate == kUnbounded; }
};

CapacityCurve build_bilinear(const ElasticSolution& elastic, const CollapseResult& collapse,
                             const LateralLoadPattern& pattern);

/// Displacement at which the base shear has dropped by alpha_s * V_by.
double displacement_shear_drop(const CapacityCurve& curve, double alpha_s = kDefaultAlphaS);

/// Shear span of every critical section, in enumerate_critical_sections order.
std::vector<double> shear_spans(const FrameSpec& frame);

/// Reference rotation of the mechanism at control displacement u.
double reference_rotation(double u, double u_y, double h_max);

/// Capacity of every critical section, in enumerate_critical_sections order.
std::vector<HingeCapacity> hinge_capacities(const FrameSpec& frame, const CollapseResult& collapse,
                                            const CapacityCurve& curve);

CapacityCurve truncate(const CapacityCurve& curve, double u_s, const std::vector<HingeCapacity>& hinges,
                       std::size_t samples = kDefaultSofteningSamples);

}  // namespace framelimit

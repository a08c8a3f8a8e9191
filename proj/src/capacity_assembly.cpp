#include "framelimit/capacity_assembly.hpp"

#include <algorithm>
#include <cmath>

#include "framelimit/errors.hpp"

namespace framelimit {

namespace {

constexpr double kTwoMinusRootTwo = 2.0 - 1.4142135623730951;

// Distance from the right end of a gravity-loaded beam to its contraflexure
// point, capped at half the span so light or unloaded beams fall back to the
// antisymmetric sway diagram.
double right_shear_span(double length, double plastic_moment, double q) {
    if (q <= 0.0) return length / 2.0;
    return std::min(kTwoMinusRootTwo * std::sqrt(plastic_moment / q), length / 2.0);
}

}  // namespace

std::string to_string(Governing g) {
    switch (g) {
        case Governing::none: return "none";
        case Governing::shear_drop: return "shear_drop";
        case Governing::chord_rotation: return "chord_rotation";
    }
    return {};
}

double CapacityCurve::base_shear(double u) const {
    if (u <= u_y) return k_e * u;
    return V_by + k_s * (u - u_y);
}

CapacityCurve build_bilinear(const ElasticSolution& elastic, const CollapseResult& collapse,
                             const LateralLoadPattern& pattern) {
    CapacityCurve c;
    c.total_force = pattern.total();
    c.k_e = elastic.k_e;
    c.u_e = elastic.u_e;
    c.lambda0 = collapse.lambda0;
    c.gamma = collapse.softening.gamma;
    c.h_max = collapse.softening.h_max;
    c.u_y = collapse.lambda0 * elastic.u_e;
    c.V_by = collapse.lambda0 * c.total_force;
    c.k_s = -collapse.softening.gamma * c.total_force;
    return c;
}

double displacement_shear_drop(const CapacityCurve& curve, double alpha_s) {
    if (!(alpha_s >= 0.0 && alpha_s < 1.0)) throw ValidationError("alpha_s must lie in [0, 1)");
    if (alpha_s == 0.0) return curve.u_y;
    if (!(curve.gamma > 0.0)) return kUnbounded;
    return curve.lambda0 * (curve.u_e + alpha_s / curve.gamma);
}

std::vector<double> shear_spans(const FrameSpec& frame) {
    std::vector<double> out;
    for (const auto& s : enumerate_critical_sections(frame)) {
        if (s.kind == SectionKind::column_end) {
            out.push_back(frame.storey_heights[s.storey] / 2.0);
            continue;
        }
        const double length = frame.bay_lengths[s.index];
        const double q = frame.vertical_loads[s.storey][s.index];
        const double mp = frame.beam(s.storey, s.index).plastic_moment;
        const double right = right_shear_span(length, mp, q);
        if (s.end == MemberEnd::right) {
            out.push_back(right);
            continue;
        }
        // Left end and sagging hinge share the span between the sagging
        // hinge (or left end) and the contraflexure point.
        const auto x = interior_hinge_abscissa(length, mp, q);
        out.push_back(length - x.value_or(0.0) - right);
    }
    return out;
}

double reference_rotation(double u, double u_y, double h_max) {
    if (u <= u_y) return 0.0;
    return (u - u_y) / h_max;
}

std::vector<HingeCapacity> hinge_capacities(const FrameSpec& frame, const CollapseResult& collapse,
                                            const CapacityCurve& curve) {
    const auto sections = enumerate_critical_sections(frame);
    const auto spans = shear_spans(frame);
    std::vector<double> rho(sections.size(), 0.0);
    for (const auto& h : collapse.hinges) rho.at(h.section_index) = std::abs(h.rho);

    std::vector<HingeCapacity> out;
    out.reserve(sections.size());
    for (std::size_t s = 0; s < sections.size(); ++s) {
        const auto& sec = sections[s];
        const auto& props = sec.is_column() ? frame.column(sec.storey, sec.index) : frame.beam(sec.storey, sec.index);
        HingeCapacity h;
        h.section = sec;
        h.shear_span = spans[s];
        h.theta_y = props.plastic_moment * h.shear_span / (2.0 * props.elastic_modulus * props.moment_of_inertia);
        h.theta_u = 8.0 * h.theta_y;
        h.rho = rho[s];
        // Only the plastic part of the chord rotation is tracked: 7 theta_y.
        if (h.rho > kHingeCutoff) h.u_ultimate = curve.u_y + 7.0 * h.theta_y * curve.h_max / h.rho;
        out.push_back(h);
    }
    return out;
}

CapacityCurve truncate(const CapacityCurve& curve, double u_s, const std::vector<HingeCapacity>& hinges,
                       std::size_t samples) {
    CapacityCurve c = curve;
    c.u_s = u_s;
    c.u_c = kUnbounded;
    c.governing_sections.clear();
    for (const auto& h : hinges) c.u_c = std::min(c.u_c, h.u_ultimate);
    if (c.u_c != kUnbounded) {
        for (std::size_t s = 0; s < hinges.size(); ++s) {
            if (std::abs(hinges[s].u_ultimate - c.u_c) <= 1e-9 * c.u_c) c.governing_sections.push_back(s);
        }
    }
    c.u_u = std::min(c.u_s, c.u_c);
    if (c.u_u == kUnbounded) throw NumericalError("neither criterion bounds the displacement capacity");
    c.governing = c.u_c <= c.u_s ? Governing::chord_rotation : Governing::shear_drop;
    if (c.governing == Governing::shear_drop) c.governing_sections.clear();

    if (!(c.base_shear(c.u_u) > 0.0)) {
        const double zero = c.u_y + c.V_by / -c.k_s;
        throw NonPositiveResidual("softening exhausts the resistance before the ultimate displacement", zero);
    }

    c.points.clear();
    c.points.emplace_back(0.0, 0.0);
    c.points.emplace_back(c.u_y, c.V_by);
    const std::size_t n = std::max<std::size_t>(samples, 1);
    for (std::size_t k = 1; k <= n; ++k) {
        const double u = k == n ? c.u_u : c.u_y + (c.u_u - c.u_y) * static_cast<double>(k) / static_cast<double>(n);
        c.points.emplace_back(u, c.base_shear(u));
    }
    return c;
}

}  // namespace framelimit

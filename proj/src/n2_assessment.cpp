#include "framelimit/n2_assessment.hpp"

#include <cmath>
#include <numbers>

#include "framelimit/errors.hpp"

namespace framelimit {

void SpectrumParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ValidationError(std::string("spectrum: ") + what);
    };
    require(ag_g > 0.0, "ag_g must be positive");
    require(S > 0.0, "S must be positive");
    require(eta > 0.0, "eta must be positive");
    require(F0 > 0.0, "F0 must be positive");
    require(T_B > 0.0 && T_B < T_C && T_C < T_D, "periods must satisfy 0 < TB < TC < TD");
    require(gravity_accel > 0.0, "gravity_accel must be positive");
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::elastic: return "elastic";
        case Regime::inelastic_short_period: return "inelastic_short_period";
        case Regime::equal_displacement: return "equal_displacement";
    }
    return {};
}

std::vector<double> default_floor_masses(const FrameSpec& frame) {
    std::vector<double> m(frame.n_storeys());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = frame.floor_gravity_load(i) / frame.gravity_accel;
    return m;
}

EquivalentSDOF equivalent_sdof(const CapacityCurve& curve, std::span<const double> shape,
                               std::span<const double> floor_masses) {
    if (!curve.truncated()) throw ValidationError("equivalent SDOF needs a truncated capacity curve");
    if (shape.size() != floor_masses.size() || shape.empty()) {
        throw ValidationError("floor_masses: expected one mass per floor");
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (!(floor_masses[i] > 0.0)) throw ValidationError("floor_masses must be positive");
        num += floor_masses[i] * shape[i];
        den += floor_masses[i] * shape[i] * shape[i];
    }
    EquivalentSDOF out;
    out.gamma_part = num / den;
    out.m_star = num;
    out.k_star = curve.k_e;
    out.d_u_star = curve.u_u / out.gamma_part;

    // Exact area under the MDOF bilinear up to u_u, scaled by 1 / Gamma^2.
    const double elastic_area = 0.5 * curve.V_by * curve.u_y;
    const double softening_area = 0.5 * (curve.V_by + curve.base_shear(curve.u_u)) * (curve.u_u - curve.u_y);
    out.energy = (elastic_area + softening_area) / (out.gamma_part * out.gamma_part);

    // F d_u - F^2 / (2k) = A, smaller root so that d_y <= d_u.
    const double kd = out.k_star * out.d_u_star;
    const double disc = kd * kd - 2.0 * out.k_star * out.energy;
    if (disc < 0.0) throw BilinearizationFailure("capacity curve lies above its elastic branch");
    out.F_u_star = kd - std::sqrt(disc);
    out.d_y_star = out.F_u_star / out.k_star;
    out.T_star = 2.0 * std::numbers::pi * std::sqrt(out.m_star / out.k_star);
    return out;
}

EquivalentSDOF equivalent_sdof(const CapacityCurve& curve, const ElasticSolution& elastic,
                               std::span<const double> floor_masses) {
    return equivalent_sdof(curve, elastic.shape, floor_masses);
}

double spectral_acceleration(const SpectrumParams& spec, double period) {
    if (period < 0.0) throw ValidationError("period must be non-negative");
    const double plateau = spec.ag_g * spec.gravity_accel * spec.S * spec.eta * spec.F0;
    if (period < spec.T_B) {
        const double r = period / spec.T_B;
        return plateau * (r + (1.0 - r) / (spec.eta * spec.F0));
    }
    if (period < spec.T_C) return plateau;
    if (period < spec.T_D) return plateau * spec.T_C / period;
    return plateau * spec.T_C * spec.T_D / (period * period);
}

AssessmentResult demand_and_verify(const EquivalentSDOF& sdof, const SpectrumParams& spec) {
    spec.validate();
    AssessmentResult out;
    const double T = sdof.T_star;
    out.Se_T = spectral_acceleration(spec, T);
    const double omega = 2.0 * std::numbers::pi / T;
    out.d_e_star = out.Se_T / (omega * omega);
    out.q_star = out.Se_T * sdof.m_star / sdof.F_u_star;
    if (out.q_star <= 1.0) {
        out.regime = Regime::elastic;
        out.demand = out.d_e_star;
    } else if (T >= spec.T_C) {
        out.regime = Regime::equal_displacement;
        out.demand = out.d_e_star;
    } else {
        out.regime = Regime::inelastic_short_period;
        out.demand = out.d_e_star / out.q_star * (1.0 + (out.q_star - 1.0) * spec.T_C / T);
        out.demand = std::max(out.demand, out.d_e_star);
    }
    if (out.q_star > 3.0) out.warnings.push_back("q* exceeds 3");
    out.safety_factor = sdof.d_u_star / out.demand;
    return out;
}

double calibrate_peak_ground_acceleration(const EquivalentSDOF& sdof, SpectrumParams spec, double target_demand) {
    if (!(target_demand > 0.0)) throw ValidationError("target demand must be positive");
    auto demand_at = [&](double ag) {
        spec.ag_g = ag;
        return demand_and_verify(sdof, spec).demand;
    };
    double lo = 1e-9, hi = 1.0;
    while (demand_at(hi) < target_demand) {
        hi *= 2.0;
        if (hi > 1e6) throw NumericalError("target demand is out of reach");
    }
    // Demand is continuous and non-decreasing in a_g.
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (demand_at(mid) < target_demand ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace framelimit

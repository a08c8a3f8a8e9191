#pragma once

#include <span>
#include <string>
#include <vector>

#include "framelimit/capacity_assembly.hpp"
#include "framelimit/elastic_analysis.hpp"

namespace framelimit {

/// Four-branch elastic acceleration spectrum. a_g in units of g, periods in s.
struct SpectrumParams {
    double ag_g = 0.0;
    double S = 1.0;
    double eta = 1.0;
    double F0 = 2.5;
    double T_B = 0.15;
    double T_C = 0.5;
    double T_D = 2.0;
    double gravity_accel = 9.81;

    void validate() const;
};

struct EquivalentSDOF {
    double gamma_part = 0.0;  // participation factor
    double m_star = 0.0;      // kN*s^2/m
    double k_star = 0.0;      // kN/m
    double F_u_star = 0.0;    // kN
    double d_y_star = 0.0;    // m
    double d_u_star = 0.0;    // m
    double T_star = 0.0;      // s
    double energy = 0.0;      // area under the scaled curve up to d_u*, kN*m
};

enum class Regime { elastic, inelastic_short_period, equal_displacement };

std::string to_string(Regime r);

struct AssessmentResult {
    double Se_T = 0.0;       // m/s^2
    double d_e_star = 0.0;   // m
    double q_star = 0.0;
    double demand = 0.0;     // m
    double safety_factor = 0.0;
    Regime regime = Regime::elastic;
    std::vector<std::string> warnings;
};

/// Default lumped masses: floor gravity load q*L summed over the bays, over g.
std::vector<double> default_floor_masses(const FrameSpec& frame);

/// Equivalent elastic-perfectly-plastic oscillator of a truncated capacity
/// curve for the given floor displacement shape (top = 1).
///
/// The initial stiffness is kept and the plateau is fitted by equal energy up
/// to d_u*.
EquivalentSDOF equivalent_sdof(const CapacityCurve& curve, std::span<const double> shape,
                               std::span<const double> floor_masses);

EquivalentSDOF equivalent_sdof(const CapacityCurve& curve, const ElasticSolution& elastic,
                               std::span<const double> floor_masses);

/// Elastic spectral acceleration Se(T), m/s^2.
double spectral_acceleration(const SpectrumParams& spec, double period);

AssessmentResult demand_and_verify(const EquivalentSDOF& sdof, const SpectrumParams& spec);

/// Peak ground acceleration (in g) for which the displacement demand of
/// `sdof` equals `target_demand`, all other spectrum parameters kept.
double calibrate_peak_ground_acceleration(const EquivalentSDOF& sdof, SpectrumParams spec, double target_demand);

}  // namespace framelimit

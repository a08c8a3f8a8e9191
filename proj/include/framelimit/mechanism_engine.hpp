#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "framelimit/frame_model.hpp"

namespace framelimit {

using Genes = std::vector<int>;

enum class MechanismKind { floor, beam, node };

std::string to_string(MechanismKind kind);

/// One of the floor, beam or node mechanisms, per unit reference rotation.
///
/// Rotation coefficients follow one convention for every section: walking
/// along the member (left to right, bottom to top), the coefficient is the
/// clockwise rotation of the part after the section minus the part before.
struct ElementaryMechanism {
    MechanismKind kind = MechanismKind::floor;
    std::size_t storey = 0;
    std::size_t index = 0;  // bay for beam mechanisms, column line for nodes
    int sense = 1;          // node mechanisms only: +1 clockwise, -1 counter-clockwise
    std::vector<std::pair<std::size_t, double>> rotations;  // (section index, coefficient)
    double w_ext_h = 0.0;  // kN*m, lateral forces at unit multiplier
    double w_ext_v = 0.0;  // kN*m, first-order work of the vertical loads

    std::string label() const;
};

/// Gene vector expanded into net rotations and works.
struct MechanismCombination {
    Genes genes;
    std::vector<double> rho;  // net rotation coefficient per critical section
    double w_int = 0.0;
    double w_ext_h = 0.0;
    double w_ext_v = 0.0;
    std::vector<int> storey_sway;

    bool is_mechanism() const noexcept { return w_ext_h > 0.0; }
};

struct SofteningData {
    std::vector<double> heights;  // lateral floor displacement per unit reference rotation, m
    double h_max = 0.0;           // top displacement per unit reference rotation, m
    double gamma = 0.0;           // multiplier drop per unit top displacement, 1/m
};

struct PoolOptions {
    // Node mechanisms are generated at joints where at least this many
    // members converge. With 2 every joint, corners included, can transfer
    // its hinge to the weaker member.
    int node_min_members = 2;
};

inline constexpr double kHingeCutoff = 1e-9;

/// Elementary mechanisms of one frame under one lateral pattern.
///
/// Genes are ordered floor mechanisms (bottom up), then beam mechanisms
/// (storey-major), then node mechanisms (storey-major, clockwise sense first).
class MechanismPool {
public:
    MechanismPool(const FrameSpec& frame, const LateralLoadPattern& pattern, PoolOptions options = {});

    const std::vector<CriticalSection>& sections() const noexcept { return sections_; }
    const std::vector<ElementaryMechanism>& mechanisms() const noexcept { return mechanisms_; }
    std::size_t size() const noexcept { return mechanisms_.size(); }
    std::size_t n_storeys() const noexcept { return storey_heights_.size(); }
    const LateralLoadPattern& pattern() const noexcept { return pattern_; }

    MechanismCombination combine(std::span<const int> genes) const;

    /// Collapse multiplier, or nothing when the genes do no lateral work.
    std::optional<double> try_lambda0(std::span<const int> genes) const;

    /// Throws NoMechanism when the genes do no lateral work.
    double lambda0(std::span<const int> genes) const;

    SofteningData softening(std::span<const int> genes) const;

    /// Sections carrying a net rotation above kHingeCutoff.
    std::vector<std::pair<std::size_t, double>> hinges(std::span<const int> genes) const;

private:
    void check_genes(std::span<const int> genes) const;

    std::vector<CriticalSection> sections_;
    std::vector<double> plastic_moments_;
    std::vector<ElementaryMechanism> mechanisms_;
    std::vector<double> storey_heights_;
    std::vector<double> floor_gravity_loads_;
    LateralLoadPattern pattern_;
};

MechanismPool build_pool(const FrameSpec& frame, const LateralLoadPattern& pattern, PoolOptions options = {});

double evaluate_lambda0(const FrameSpec& frame, const LateralLoadPattern& pattern, std::span<const int> genes);

SofteningData softening(const FrameSpec& frame, const LateralLoadPattern& pattern, std::span<const int> genes);

}  // namespace framelimit

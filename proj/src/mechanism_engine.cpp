#include "framelimit/mechanism_engine.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "framelimit/errors.hpp"

namespace framelimit {

namespace {

using SectionKey = std::tuple<SectionKind, std::size_t, std::size_t, MemberEnd>;

SectionKey key_of(const CriticalSection& s) { return {s.kind, s.storey, s.index, s.end}; }

}  // namespace

std::string to_string(MechanismKind kind) {
    switch (kind) {
        case MechanismKind::floor: return "floor";
        case MechanismKind::beam: return "beam";
        case MechanismKind::node: return "node";
    }
    return {};
}

std::string ElementaryMechanism::label() const {
    std::ostringstream out;
    switch (kind) {
        case MechanismKind::floor: out << "floor(storey=" << storey << ")"; break;
        case MechanismKind::beam: out << "beam(storey=" << storey << ", bay=" << index << ")"; break;
        case MechanismKind::node:
            out << "node(storey=" << storey << ", line=" << index << ", " << (sense > 0 ? "+" : "-") << ")";
            break;
    }
    return out.str();
}

MechanismPool::MechanismPool(const FrameSpec& frame, const LateralLoadPattern& pattern, PoolOptions options)
    : sections_(enumerate_critical_sections(frame)), storey_heights_(frame.storey_heights), pattern_(pattern) {
    frame.validate();
    pattern.validate(frame.n_storeys());

    const std::size_t nf = frame.n_storeys(), nc = frame.n_columns(), nb = frame.n_bays();
    std::map<SectionKey, std::size_t> index;
    plastic_moments_.reserve(sections_.size());
    for (std::size_t s = 0; s < sections_.size(); ++s) {
        index.emplace(key_of(sections_[s]), s);
        plastic_moments_.push_back(sections_[s].plastic_moment);
    }
    auto at = [&](SectionKind kind, std::size_t i, std::size_t j, MemberEnd end) {
        return index.at({kind, i, j, end});
    };
    for (std::size_t i = 0; i < nf; ++i) floor_gravity_loads_.push_back(frame.floor_gravity_load(i));

    for (std::size_t i = 0; i < nf; ++i) {
        ElementaryMechanism m;
        m.kind = MechanismKind::floor;
        m.storey = i;
        for (std::size_t j = 0; j < nc; ++j) {
            m.rotations.emplace_back(at(SectionKind::column_end, i, j, MemberEnd::bottom), 1.0);
            m.rotations.emplace_back(at(SectionKind::column_end, i, j, MemberEnd::top), -1.0);
        }
        double above = 0.0;
        for (std::size_t k = i; k < nf; ++k) above += pattern.forces[k];
        m.w_ext_h = frame.storey_heights[i] * above;
        mechanisms_.push_back(std::move(m));
    }

    for (std::size_t s = 0; s < sections_.size(); ++s) {
        const auto& span = sections_[s];
        if (span.kind != SectionKind::beam_span) continue;
        const std::size_t i = span.storey, j = span.index;
        const double length = frame.bay_lengths[j], x = span.x;
        ElementaryMechanism m;
        m.kind = MechanismKind::beam;
        m.storey = i;
        m.index = j;
        m.rotations = {{at(SectionKind::beam_end, i, j, MemberEnd::left), 1.0},
                       {s, -length / (length - x)},
                       {at(SectionKind::beam_end, i, j, MemberEnd::right), x / (length - x)}};
        m.w_ext_v = frame.vertical_loads[i][j] * length * x / 2.0;
        mechanisms_.push_back(std::move(m));
    }

    for (std::size_t i = 0; i < nf; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            // Coefficient for a unit clockwise joint rotation on each member end.
            std::vector<std::pair<std::size_t, double>> ends;
            ends.emplace_back(at(SectionKind::column_end, i, j, MemberEnd::top), 1.0);
            if (i + 1 < nf) ends.emplace_back(at(SectionKind::column_end, i + 1, j, MemberEnd::bottom), -1.0);
            if (j > 0) ends.emplace_back(at(SectionKind::beam_end, i, j - 1, MemberEnd::right), 1.0);
            if (j < nb) ends.emplace_back(at(SectionKind::beam_end, i, j, MemberEnd::left), -1.0);
            if (static_cast<int>(ends.size()) < options.node_min_members) continue;
            for (int sense : {1, -1}) {
                ElementaryMechanism m;
                m.kind = MechanismKind::node;
                m.storey = i;
                m.index = j;
                m.sense = sense;
                m.rotations = ends;
                for (auto& r : m.rotations) r.second *= sense;
                mechanisms_.push_back(std::move(m));
            }
        }
    }
}

void MechanismPool::check_genes(std::span<const int> genes) const {
    if (genes.size() != mechanisms_.size()) {
        throw ValidationError("gene vector has " + std::to_string(genes.size()) + " entries, pool has " +
                              std::to_string(mechanisms_.size()));
    }
    for (int c : genes) {
        if (c < 0) throw ValidationError("genes must be non-negative");
    }
}

MechanismCombination MechanismPool::combine(std::span<const int> genes) const {
    check_genes(genes);
    MechanismCombination out;
    out.genes.assign(genes.begin(), genes.end());
    out.rho.assign(sections_.size(), 0.0);
    for (std::size_t k = 0; k < mechanisms_.size(); ++k) {
        const int c = genes[k];
        if (c == 0) continue;
        const auto& m = mechanisms_[k];
        for (const auto& [s, coef] : m.rotations) out.rho[s] += c * coef;
        out.w_ext_h += c * m.w_ext_h;
        out.w_ext_v += c * m.w_ext_v;
    }
    for (std::size_t s = 0; s < sections_.size(); ++s) out.w_int += plastic_moments_[s] * std::abs(out.rho[s]);
    out.storey_sway.assign(genes.begin(), genes.begin() + static_cast<std::ptrdiff_t>(n_storeys()));
    return out;
}

std::optional<double> MechanismPool::try_lambda0(std::span<const int> genes) const {
    const auto comb = combine(genes);
    if (!comb.is_mechanism()) return std::nullopt;
    return (comb.w_int - comb.w_ext_v) / comb.w_ext_h;
}

double MechanismPool::lambda0(std::span<const int> genes) const {
    auto value = try_lambda0(genes);
    if (!value) throw NoMechanism("combination does no work against the lateral forces");
    return *value;
}

SofteningData MechanismPool::softening(std::span<const int> genes) const {
    check_genes(genes);
    const std::size_t nf = n_storeys();
    SofteningData out;
    out.heights.resize(nf);
    double h = 0.0, g = 0.0, second_order = 0.0, lateral = 0.0;
    for (std::size_t i = 0; i < nf; ++i) {
        const double c = genes[i];
        h += storey_heights_[i] * c;
        g += storey_heights_[i] * c * c;
        out.heights[i] = h;
        second_order += floor_gravity_loads_[i] * g;
        lateral += pattern_.forces[i] * h;
    }
    out.h_max = h;
    if (!(lateral > 0.0) || !(out.h_max > 0.0)) {
        throw NoMechanism("combination does no work against the lateral forces");
    }
    out.gamma = second_order / (out.h_max * lateral);
    return out;
}

std::vector<std::pair<std::size_t, double>> MechanismPool::hinges(std::span<const int> genes) const {
    const auto comb = combine(genes);
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t s = 0; s < comb.rho.size(); ++s) {
        if (std::abs(comb.rho[s]) > kHingeCutoff) out.emplace_back(s, comb.rho[s]);
    }
    return out;
}

MechanismPool build_pool(const FrameSpec& frame, const LateralLoadPattern& pattern, PoolOptions options) {
    return MechanismPool(frame, pattern, options);
}

double evaluate_lambda0(const FrameSpec& frame, const LateralLoadPattern& pattern, std::span<const int> genes) {
    return build_pool(frame, pattern).lambda0(genes);
}

SofteningData softening(const FrameSpec& frame, const LateralLoadPattern& pattern, std::span<const int> genes) {
    return build_pool(frame, pattern).softening(genes);
}

}  // namespace framelimit

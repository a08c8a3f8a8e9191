#include "framelimit/elastic_analysis.hpp"

#include <array>
#include <cmath>
#include <optional>

#include "framelimit/errors.hpp"

namespace framelimit {

namespace {

using Dofs = std::array<std::optional<Eigen::Index>, 4>;

Eigen::Index rotation_dof(const FrameSpec& frame, std::size_t storey, std::size_t line) {
    return static_cast<Eigen::Index>(frame.n_storeys() + storey * frame.n_columns() + line);
}

void scatter(Eigen::MatrixXd& K, const Eigen::Matrix4d& k, const Dofs& dofs) {
    for (int a = 0; a < 4; ++a) {
        if (!dofs[a]) continue;
        for (int b = 0; b < 4; ++b) {
            if (dofs[b]) K(*dofs[a], *dofs[b]) += k(a, b);
        }
    }
}

// Euler-Bernoulli element in local (transverse, rotation) x 2 ordering.
Eigen::Matrix4d flexural_element(double EI, double length) {
    const double l = length, l2 = l * l, l3 = l2 * l;
    Eigen::Matrix4d k;
    k << 12 / l3, 6 / l2, -12 / l3, 6 / l2,
         6 / l2, 4 / l, -6 / l2, 2 / l,
         -12 / l3, -6 / l2, 12 / l3, -6 / l2,
         6 / l2, 2 / l, -6 / l2, 4 / l;
    return EI * k;
}

Eigen::MatrixXd solve_checked(const Eigen::MatrixXd& K, const Eigen::MatrixXd& rhs) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    const double max_diag = K.diagonal().cwiseAbs().maxCoeff();
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(max_diag > 0.0) || pivots.minCoeff() < 1e-10 * max_diag) {
        throw SingularStiffness("stiffness matrix is singular or not positive definite");
    }
    return lu.solve(rhs);
}

}  // namespace

Eigen::MatrixXd assemble_stiffness(const FrameSpec& frame) {
    const std::size_t nf = frame.n_storeys(), nc = frame.n_columns();
    const auto n = static_cast<Eigen::Index>(nf + nf * nc);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);

    for (std::size_t i = 0; i < nf; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const auto& s = frame.column(i, j);
            Dofs dofs;
            if (i > 0) {
                dofs[0] = static_cast<Eigen::Index>(i - 1);
                dofs[1] = rotation_dof(frame, i - 1, j);
            }
            dofs[2] = static_cast<Eigen::Index>(i);
            dofs[3] = rotation_dof(frame, i, j);
            scatter(K, flexural_element(s.elastic_modulus * s.moment_of_inertia, frame.storey_heights[i]), dofs);
        }
        // Beams only see the end rotations: no vertical joint motion.
        for (std::size_t j = 0; j < frame.n_bays(); ++j) {
            const auto& s = frame.beam(i, j);
            Dofs dofs{std::nullopt, rotation_dof(frame, i, j), std::nullopt, rotation_dof(frame, i, j + 1)};
            scatter(K, flexural_element(s.elastic_modulus * s.moment_of_inertia, frame.bay_lengths[j]), dofs);
        }
    }
    return K;
}

ElasticSolution solve_elastic(const FrameSpec& frame, const LateralLoadPattern& pattern) {
    pattern.validate(frame.n_storeys());
    const std::size_t nf = frame.n_storeys(), nc = frame.n_columns();
    const Eigen::MatrixXd K = assemble_stiffness(frame);
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(K.rows(), 1);
    for (std::size_t i = 0; i < nf; ++i) f(static_cast<Eigen::Index>(i), 0) = pattern.forces[i];

    const Eigen::MatrixXd u = solve_checked(K, f);

    ElasticSolution sol;
    sol.floor_displacements.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) sol.floor_displacements[i] = u(static_cast<Eigen::Index>(i), 0);
    sol.joint_rotations.assign(nf, std::vector<double>(nc));
    for (std::size_t i = 0; i < nf; ++i) {
        for (std::size_t j = 0; j < nc; ++j) sol.joint_rotations[i][j] = u(rotation_dof(frame, i, j), 0);
    }
    sol.u_e = sol.floor_displacements.back();
    if (!(sol.u_e > 0.0)) throw SingularStiffness("non-positive control displacement");
    sol.k_e = pattern.total() / sol.u_e;
    sol.shape.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) sol.shape[i] = sol.floor_displacements[i] / sol.u_e;
    return sol;
}

Eigen::MatrixXd lateral_stiffness(const FrameSpec& frame) {
    const auto nf = static_cast<Eigen::Index>(frame.n_storeys());
    const Eigen::MatrixXd K = assemble_stiffness(frame);
    Eigen::MatrixXd unit = Eigen::MatrixXd::Zero(K.rows(), nf);
    unit.topRows(nf).setIdentity();
    const Eigen::MatrixXd u = solve_checked(K, unit);
    const Eigen::MatrixXd flexibility = u.topRows(nf);
    Eigen::MatrixXd stiffness = flexibility.inverse();
    return 0.5 * (stiffness + stiffness.transpose());
}

std::vector<double> fundamental_mode_shape(const FrameSpec& frame, std::span<const double> floor_masses) {
    const std::size_t nf = frame.n_storeys();
    if (floor_masses.size() != nf) throw ValidationError("floor_masses: expected one mass per floor");
    Eigen::VectorXd m(static_cast<Eigen::Index>(nf));
    for (std::size_t i = 0; i < nf; ++i) {
        if (!(floor_masses[i] > 0.0)) throw ValidationError("floor_masses must be positive");
        m(static_cast<Eigen::Index>(i)) = floor_masses[i];
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(lateral_stiffness(frame), m.asDiagonal().toDenseMatrix());
    if (eig.info() != Eigen::Success) throw NumericalError("modal analysis failed");
    // Eigenvalues come sorted ascending; column 0 is the fundamental mode.
    const Eigen::VectorXd phi = eig.eigenvectors().col(0);
    const double top = phi(phi.size() - 1);
    if (top == 0.0) throw NumericalError("fundamental mode has a fixed top floor");
    std::vector<double> shape(nf);
    for (std::size_t i = 0; i < nf; ++i) shape[i] = phi(static_cast<Eigen::Index>(i)) / top;
    return shape;
}

}  // namespace framelimit

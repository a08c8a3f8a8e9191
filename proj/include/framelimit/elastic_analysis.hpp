#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "framelimit/frame_model.hpp"

namespace framelimit {

/// First-order elastic response of a frame under a lateral load pattern.
struct ElasticSolution {
    std::vector<double> floor_displacements;  // m, bottom floor first
    Grid<double> joint_rotations;             // rad, n_storeys x n_columns
    double u_e = 0.0;                         // top-floor displacement, m
    double k_e = 0.0;                         // total lateral force / u_e, kN/m
    std::vector<double> shape;                // floor displacements scaled to top = 1
};

/// Assembles the flexural stiffness matrix.
///
/// Columns are axially rigid and floors move as rigid diaphragms, so the
/// unknowns are one sway per floor (indices 0..n_storeys-1) followed by one
/// rotation per joint in storey-major order.
Eigen::MatrixXd assemble_stiffness(const FrameSpec& frame);

ElasticSolution solve_elastic(const FrameSpec& frame, const LateralLoadPattern& pattern);

/// Lateral stiffness matrix (n_storeys x n_storeys) with the joint rotations
/// condensed out, kN/m.
Eigen::MatrixXd lateral_stiffness(const FrameSpec& frame);

/// Fundamental sway mode of the frame with lumped floor masses, scaled so the
/// top floor equals 1.
std::vector<double> fundamental_mode_shape(const FrameSpec& frame, std::span<const double> floor_masses);

}  // namespace framelimit

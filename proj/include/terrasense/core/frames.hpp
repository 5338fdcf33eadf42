#pragma once

#include <Eigen/Core>

#include "terrasense/core/types.hpp"

namespace terrasense {

/// Rotation from the vehicle reference frame to the world reference frame,
/// composed as yaw * pitch * roll about the world axes.
Eigen::Matrix3d rotation_matrix_rpy(const Attitude& attitude);

/// Vehicle weight force projected into the vehicle reference frame:
/// [W sin(pitch), -W cos(pitch) sin(roll), -W cos(pitch) cos(roll)].
/// W must be strictly positive.
Eigen::Vector3d weight_in_vrf(double weight, const Attitude& attitude);

}  // namespace terrasense

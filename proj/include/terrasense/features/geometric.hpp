#pragma once

#include <span>

#include <Eigen/Core>

#include "terrasense/core/types.hpp"

namespace terrasense {

/// Least-squares plane through a point set, from the spectral decomposition
/// of the centred covariance matrix (divisor N). The normal is the direction
/// of minimum spread, oriented so its z-component is non-negative.
struct PlaneFit {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d singular_values = Eigen::Vector3d::Zero();  // descending
};

/// Four-element geometric signature of a terrain patch.
struct GeometricFeatures {
  double slope = 0.0;         // rad, angle between patch normal and vertical
  double fit_residual = 0.0;  // m^2, minimum singular value of the covariance
  double z_variance = 0.0;    // m^2, population variance of point heights
  double height_range = 0.0;  // m, z_max - z_min

  std::array<double, 4> flat() const {
    return {slope, fit_residual, z_variance, height_range};
  }
};

/// Throws DegeneratePatchError for fewer than 3 points and
/// RankDeficientError for collinear or coincident points.
PlaneFit fit_plane(std::span<const Eigen::Vector3d> points);

GeometricFeatures geometric_feature_vector(std::span<const ColoredPoint> points);

}  // namespace terrasense

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "terrasense/core/types.hpp"
#include "terrasense/features/color.hpp"
#include "terrasense/features/contact.hpp"
#include "terrasense/features/geometric.hpp"

namespace terrasense {

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

/// A stitched ground patch in the world frame. Colour and geometric features
/// are available as soon as the patch is observed; contact features appear
/// once the vehicle has driven over it.
struct TerrainPatch {
  std::vector<ColoredPoint> points;  // world frame
  double observed_t = 0.0;           // timestamp of the first stitched frame
  int first_pose_index = -1;
  int last_pose_index = -1;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d min_corner = Eigen::Vector3d::Zero();
  Eigen::Vector3d max_corner = Eigen::Vector3d::Zero();

  std::optional<TimeWindow> traversal;
  std::optional<ColorFeatures> color;
  std::optional<GeometricFeatures> geometric;
  std::optional<ContactFeatures> contact;

  std::optional<TerrainClass> label;      // ground truth, when known
  std::optional<TerrainClass> predicted;  // classifier output
};

/// Patch-centric terrain map; patches are kept ordered by observation time.
struct MultimodalMap {
  std::vector<TerrainPatch> patches;
  std::vector<Eigen::Vector3d> path;  // vehicle positions, world frame
};

}  // namespace terrasense

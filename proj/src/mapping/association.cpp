#include "terrasense/mapping/association.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "terrasense/core/errors.hpp"

namespace terrasense {
namespace {

bool inside_footprint(const Eigen::Vector3d& position,
                      const Eigen::Vector3d& centroid,
                      const AssociationConfig& config) {
  return std::abs(position.x() - centroid.x()) <= 0.5 * config.footprint_length &&
         std::abs(position.y() - centroid.y()) <= 0.5 * config.footprint_width;
}

}  // namespace

PatchStatus associate_features(TerrainPatch& patch, const SensorSeries& series,
                               const VehicleParams& params,
                               const AssociationConfig& config) {
  if (patch.points.empty()) {
    throw EmptyPatchError("cannot associate features of an empty patch");
  }
  if (!patch.color) {
    patch.color = color_feature_vector(patch.points);
  }
  if (!patch.geometric) {
    patch.geometric = geometric_feature_vector(patch.points);
  }

  if (!patch.traversal) {
    // First contiguous run of poses inside the footprint, starting at or
    // after the observation time. The window closes on the first pose back
    // outside; reaching the end of the track while still inside leaves the
    // patch pending (the window would be truncated).
    std::size_t enter = series.poses.size();
    std::size_t exit = series.poses.size();
    for (std::size_t i = 0; i < series.poses.size(); ++i) {
      const PoseSample& pose = series.poses[i];
      if (pose.t < patch.observed_t) continue;
      if (inside_footprint(pose.position, patch.centroid, config)) {
        enter = i;
        break;
      }
    }
    if (enter < series.poses.size()) {
      for (std::size_t i = enter + 1; i < series.poses.size(); ++i) {
        if (!inside_footprint(series.poses[i].position, patch.centroid,
                              config)) {
          exit = i;
          break;
        }
      }
    }
    if (enter >= series.poses.size() || exit >= series.poses.size()) {
      return PatchStatus::Pending;
    }
    patch.traversal =
        TimeWindow{series.poses[enter].t, series.poses[exit - 1].t};
  }

  if (!patch.contact) {
    patch.contact =
        contact_feature_vector(series, patch.traversal->start,
                               patch.traversal->end, params, config.contact);
  }
  return PatchStatus::Completed;
}

}  // namespace terrasense

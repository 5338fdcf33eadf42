#include "terrasense/mapping/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Geometry>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/frames.hpp"
#include "terrasense/core/series.hpp"

namespace terrasense {

std::vector<ColoredPoint> segment_ground(const CloudFrame& frame,
                                         const SegmentationConfig& config) {
  std::vector<ColoredPoint> corridor;
  corridor.reserve(frame.points.size());
  const double half_width = 0.5 * config.corridor_width;
  for (const ColoredPoint& p : frame.points) {
    const double x = p.position.x();
    const double y = p.position.y();
    if (x < config.ahead_min || x > config.ahead_max) continue;
    if (std::abs(y) > half_width) continue;
    corridor.push_back(p);
  }
  if (corridor.empty()) return corridor;

  // Local ground height: low percentile of corridor heights, robust to a few
  // protruding returns.
  std::vector<double> heights;
  heights.reserve(corridor.size());
  for (const ColoredPoint& p : corridor) heights.push_back(p.position.z());
  const auto rank = static_cast<std::ptrdiff_t>(
      std::clamp<double>(config.ground_percentile, 0.0, 1.0) *
      static_cast<double>(heights.size() - 1));
  std::nth_element(heights.begin(), heights.begin() + rank, heights.end());
  const double ground_z = heights[static_cast<std::size_t>(rank)];
  const double ceiling = ground_z + config.undercarriage_clearance;

  std::vector<ColoredPoint> ground;
  ground.reserve(corridor.size());
  for (const ColoredPoint& p : corridor) {
    if (p.position.z() <= ceiling) ground.push_back(p);
  }
  return ground;
}

StitchResult stitch_patches(const std::vector<CloudFrame>& frames,
                            const std::vector<PoseSample>& poses,
                            const SegmentationConfig& config) {
  if (config.frames_per_patch < 1) {
    throw InvalidArgumentError("frames_per_patch must be at least 1");
  }
  StitchResult result;
  const auto group = static_cast<std::size_t>(config.frames_per_patch);

  for (std::size_t start = 0; start + group <= frames.size(); start += group) {
    TerrainPatch patch;
    bool pose_gap = false;
    for (std::size_t k = 0; k < group && !pose_gap; ++k) {
      const CloudFrame& frame = frames[start + k];
      const auto pose_idx = nearest_sample(poses, frame.t, config.pose_max_gap);
      if (!pose_idx) {
        pose_gap = true;
        break;
      }
      if (k == 0) {
        patch.observed_t = frame.t;
        patch.first_pose_index = static_cast<int>(*pose_idx);
      }
      patch.last_pose_index = static_cast<int>(*pose_idx);

      std::vector<ColoredPoint> ground = segment_ground(frame, config);
      const PoseSample& pose = poses[*pose_idx];
      const Eigen::Matrix3d r = rotation_matrix_rpy(pose.attitude);
      for (ColoredPoint& p : ground) {
        p.position = pose.position + r * p.position;
        patch.points.push_back(p);
      }
    }
    if (pose_gap) {
      ++result.dropped_patches;
      continue;
    }
    if (patch.points.empty()) {
      ++result.empty_patches;
      continue;
    }
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    Eigen::Vector3d lo =
        Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d hi = -lo;
    for (const ColoredPoint& p : patch.points) {
      sum += p.position;
      lo = lo.cwiseMin(p.position);
      hi = hi.cwiseMax(p.position);
    }
    patch.centroid = sum / static_cast<double>(patch.points.size());
    patch.min_corner = lo;
    patch.max_corner = hi;
    result.patches.push_back(std::move(patch));
  }
  return result;
}

}  // namespace terrasense

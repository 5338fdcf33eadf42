#pragma once

#include <vector>

#include "terrasense/core/types.hpp"
#include "terrasense/mapping/patch.hpp"

namespace terrasense {

struct SegmentationConfig {
  // Ground corridor in front of the vehicle, body frame.
  double ahead_min = 0.15;       // m
  double ahead_max = 1.50;       // m
  double corridor_width = 0.70;  // m, centred on the x axis

  // Points this far above the local ground estimate are treated as
  // obstacles/canopy and discarded. The local ground height is the given
  // percentile of corridor point heights.
  double undercarriage_clearance = 0.25;  // m
  double ground_percentile = 0.10;

  int frames_per_patch = 4;
  double pose_max_gap = 0.2;  // s, frame-to-pose association tolerance
};

/// Keep the drivable ground points of one frame: inside the forward
/// corridor and below the undercarriage plane. Input and output are in the
/// body frame.
std::vector<ColoredPoint> segment_ground(const CloudFrame& frame,
                                         const SegmentationConfig& config = {});

struct StitchResult {
  std::vector<TerrainPatch> patches;
  int dropped_patches = 0;  // groups with a frame lacking a pose in tolerance
  int empty_patches = 0;    // groups whose corridors held no ground points
};

/// Group consecutive frames into patches of `frames_per_patch`: segment each
/// frame and transform the ground points to the world frame with the nearest
/// pose. A group containing a frame without a usable pose is dropped
/// (counted, not fatal), as is a group with no ground points at all. A
/// trailing group smaller than `frames_per_patch` is discarded.
StitchResult stitch_patches(const std::vector<CloudFrame>& frames,
                            const std::vector<PoseSample>& poses,
                            const SegmentationConfig& config = {});

}  // namespace terrasense

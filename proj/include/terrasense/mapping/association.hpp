#pragma once

#include "terrasense/core/types.hpp"
#include "terrasense/features/contact.hpp"
#include "terrasense/mapping/patch.hpp"

namespace terrasense {

struct AssociationConfig {
  // Wheel footprint rectangle centred on the patch centroid (world frame,
  // x along travel): the patch counts as traversed while the vehicle
  // position stays inside it.
  double footprint_length = 0.70;  // m, along x
  double footprint_width = 0.54;   // m, along y

  // Pending patches further behind the vehicle than this are abandoned.
  double pending_horizon = 30.0;  // m

  ContactConfig contact;
};

enum class PatchStatus { Pending, Completed };

/// Detect the traversal window of a patch from the pose track and compute
/// the traversal-bound contact features. Colour and geometric features are
/// filled in if missing. Returns Pending when the vehicle never crossed the
/// footprint (or is still inside it at the end of the track); the patch then
/// carries observation features only.
PatchStatus associate_features(TerrainPatch& patch, const SensorSeries& series,
                               const VehicleParams& params,
                               const AssociationConfig& config = {});

}  // namespace terrasense

#pragma once

#include <array>
#include <span>

#include "terrasense/core/types.hpp"

namespace terrasense {

/// The four population moments of one colour channel: mean, variance, and the
/// raw third and fourth central moments (divisor N, no standardisation).
struct ChannelMoments {
  double mean = 0.0;
  double variance = 0.0;
  double third = 0.0;
  double fourth = 0.0;
};

/// 12-element colour signature: for each channel c1, c2, c3 in order, the
/// mean, variance, third and fourth central moments of the transformed
/// intensities (radians).
struct ColorFeatures {
  std::array<ChannelMoments, 3> channels{};

  std::array<double, 12> flat() const {
    std::array<double, 12> v{};
    for (int c = 0; c < 3; ++c) {
      v[4 * c + 0] = channels[c].mean;
      v[4 * c + 1] = channels[c].variance;
      v[4 * c + 2] = channels[c].third;
      v[4 * c + 3] = channels[c].fourth;
    }
    return v;
  }
};

/// Map RGB intensities to the chromaticity angles
///   ck = arctan(channel / max(other two)),
/// each in [0, pi/2]. Degenerate denominators follow the atan2 convention:
/// arctan(x/0) = pi/2 for x > 0, and a pure-black pixel maps to (0, 0, 0).
std::array<double, 3> rgb_to_c1c2c3(double r, double g, double b);

/// Population moments with divisor N. Throws EmptyPatchError on an empty
/// input. Accumulates in two passes so the fourth moment stays accurate.
ChannelMoments channel_moments(std::span<const double> values);

/// Colour signature of a patch: transform every point, then take per-channel
/// moments. Throws MissingModalityError when the patch carries no points.
ColorFeatures color_feature_vector(std::span<const ColoredPoint> points);

}  // namespace terrasense

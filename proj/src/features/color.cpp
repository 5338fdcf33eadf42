#include "terrasense/features/color.hpp"

#include <cmath>
#include <vector>

#include "terrasense/core/errors.hpp"

namespace terrasense {

std::array<double, 3> rgb_to_c1c2c3(double r, double g, double b) {
  // atan2(x, m) equals atan(x/m) for m > 0, pi/2 for m = 0 and x > 0, and
  // 0 at x = m = 0, which is exactly the convention wanted here.
  return {std::atan2(r, std::max(g, b)),
          std::atan2(g, std::max(r, b)),
          std::atan2(b, std::max(r, g))};
}

ChannelMoments channel_moments(std::span<const double> values) {
  if (values.empty()) {
    throw EmptyPatchError("channel_moments: empty value list");
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  ChannelMoments m;
  m.mean = sum / n;
  double s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double v : values) {
    const double d = v - m.mean;
    const double d2 = d * d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
  }
  m.variance = s2 / n;
  m.third = s3 / n;
  m.fourth = s4 / n;
  return m;
}

ColorFeatures color_feature_vector(std::span<const ColoredPoint> points) {
  if (points.empty()) {
    throw MissingModalityError("patch has no colour data");
  }
  std::vector<double> chan[3];
  for (auto& c : chan) c.reserve(points.size());
  for (const auto& p : points) {
    const auto c = rgb_to_c1c2c3(p.rgb[0], p.rgb[1], p.rgb[2]);
    chan[0].push_back(c[0]);
    chan[1].push_back(c[1]);
    chan[2].push_back(c[2]);
  }
  ColorFeatures f;
  for (int i = 0; i < 3; ++i) f.channels[i] = channel_moments(chan[i]);
  return f;
}

}  // namespace terrasense

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace terrasense {

/// Index of the sample whose timestamp is nearest to `t`, or nullopt when the
/// stream is empty or the nearest sample is further away than `max_gap`.
/// Samples must expose a `.t` member and be sorted by it.
template <typename Sample>
std::optional<std::size_t> nearest_sample(const std::vector<Sample>& stream,
                                          double t, double max_gap) {
  if (stream.empty()) return std::nullopt;
  auto it = std::lower_bound(
      stream.begin(), stream.end(), t,
      [](const Sample& s, double value) { return s.t < value; });
  std::size_t idx;
  if (it == stream.begin()) {
    idx = 0;
  } else if (it == stream.end()) {
    idx = stream.size() - 1;
  } else {
    std::size_t hi = static_cast<std::size_t>(it - stream.begin());
    idx = (t - stream[hi - 1].t <= stream[hi].t - t) ? hi - 1 : hi;
  }
  if (std::abs(stream[idx].t - t) > max_gap) return std::nullopt;
  return idx;
}

/// Half-open index range [first, last) of samples with t in [t0, t1].
template <typename Sample>
std::pair<std::size_t, std::size_t> samples_in_window(
    const std::vector<Sample>& stream, double t0, double t1) {
  auto lo = std::lower_bound(
      stream.begin(), stream.end(), t0,
      [](const Sample& s, double value) { return s.t < value; });
  auto hi = std::upper_bound(
      stream.begin(), stream.end(), t1,
      [](double value, const Sample& s) { return value < s.t; });
  return {static_cast<std::size_t>(lo - stream.begin()),
          static_cast<std::size_t>(hi - stream.begin())};
}

/// True when the stream covers [t0, t1] with no internal gap larger than
/// `max_gap` and samples within `max_gap` of both endpoints.
template <typename Sample>
bool covers_window(const std::vector<Sample>& stream, double t0, double t1,
                   double max_gap) {
  auto [first, last] = samples_in_window(stream, t0, t1);
  if (first == last) return false;
  if (stream[first].t - t0 > max_gap) return false;
  if (t1 - stream[last - 1].t > max_gap) return false;
  for (std::size_t i = first + 1; i < last; ++i) {
    if (stream[i].t - stream[i - 1].t > max_gap) return false;
  }
  return true;
}

}  // namespace terrasense

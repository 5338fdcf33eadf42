#include "terrasense/sim/synth_run.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "terrasense/core/errors.hpp"
#include "terrasense/features/contact.hpp"
#include "terrasense/mapping/segmentation.hpp"
#include "terrasense/sim/quarter_vehicle.hpp"

namespace terrasense {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent deterministic seed per sensor stream so a change in one
/// generator never shifts the random sequence of another.
std::uint64_t substream(std::uint64_t seed, std::uint64_t id) {
  return splitmix64(seed ^ splitmix64(id));
}

/// Zero-mean two-sinusoid process with std `sigma`; incommensurate periods
/// keep it from repeating within a run.
class DriftSeries {
 public:
  DriftSeries(double sigma, double period_a, double period_b,
              std::mt19937_64& rng)
      : sigma_(sigma), period_a_(period_a), period_b_(period_b) {
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    phase_a_ = phase(rng);
    phase_b_ = phase(rng);
  }

  double operator()(double t) const {
    if (sigma_ <= 0.0) return 0.0;
    // Each sinusoid of amplitude sigma contributes variance sigma^2/2.
    return sigma_ * (std::sin(kTwoPi * t / period_a_ + phase_a_) +
                     std::sin(kTwoPi * t / period_b_ + phase_b_));
  }

 private:
  double sigma_;
  double period_a_, period_b_;
  double phase_a_ = 0.0, phase_b_ = 0.0;
};

/// Surface appearance used by the cloud generator (configuration values, not
/// field measurements): a dominant colour plus a secondary "spot" colour
/// (clods, dry foliage, stones, shaded pebbles) and small-scale relief.
struct ClassAppearance {
  std::array<double, 3> primary_mean;
  std::array<double, 3> primary_std;
  std::array<double, 3> secondary_mean;
  std::array<double, 3> secondary_std;
  double spot_weight;

  double relief_std;          // m, per-point height noise
  double furrow_amplitude;    // m, along-track ridges (ploughed soil)
  double furrow_wavelength;   // m
};

ClassAppearance appearance_for(TerrainClass terrain) {
  switch (terrain) {
    case TerrainClass::PloughedTerrain:
      return {{82.0, 56.0, 38.0},    {10.0, 8.0, 7.0},
              {108.0, 80.0, 57.0},   {12.0, 11.0, 10.0},
              0.18,                  0.012, 0.030, 0.35};
    case TerrainClass::UnploughedTerrain:
      return {{139.0, 118.0, 84.0},  {14.0, 12.0, 10.0},
              {196.0, 188.0, 158.0}, {15.0, 15.0, 14.0},
              0.12,                  0.006, 0.0, 1.0};
    case TerrainClass::DirtRoad:
      return {{172.0, 142.0, 106.0}, {10.0, 9.0, 8.0},
              {196.0, 188.0, 176.0}, {12.0, 12.0, 11.0},
              0.08,                  0.002, 0.0, 1.0};
    case TerrainClass::Gravel:
      return {{186.0, 184.0, 180.0}, {16.0, 16.0, 16.0},
              {142.0, 140.0, 136.0}, {14.0, 14.0, 14.0},
              0.25,                  0.005, 0.0, 1.0};
  }
  throw InvalidArgumentError("unknown terrain class");
}

/// Linear interpolation into a fixed-step trajectory (t[0]=0, step dt).
double sample_series(const std::vector<double>& values, double dt, double t) {
  if (values.empty()) return 0.0;
  const double pos = t / dt;
  const auto idx = static_cast<std::size_t>(
      std::clamp<double>(std::floor(pos), 0.0,
                         static_cast<double>(values.size() - 2)));
  const double u = std::clamp(pos - static_cast<double>(idx), 0.0, 1.0);
  return values[idx] + u * (values[idx + 1] - values[idx]);
}

/// Piecewise-linear elevation lookup with binary search (cloud queries are
/// not monotone across frames).
double elevation_at(const TerrainProfile& profile, double d) {
  const auto& xs = profile.distance;
  if (d <= xs.front()) return profile.elevation.front();
  if (d >= xs.back()) return profile.elevation.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), d);
  const auto i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double u = (d - xs[i]) / (xs[i + 1] - xs[i]);
  return profile.elevation[i] + u * (profile.elevation[i + 1] - profile.elevation[i]);
}

struct SegmentLayout {
  std::vector<double> start_time;      // per segment
  std::vector<double> start_distance;  // per segment
  double total_duration = 0.0;

  std::size_t index_at_time(double t) const {
    std::size_t k = start_time.size() - 1;
    while (k > 0 && t < start_time[k]) --k;
    return k;
  }
  std::size_t index_at_distance(double d) const {
    std::size_t k = start_distance.size() - 1;
    while (k > 0 && d < start_distance[k]) --k;
    return k;
  }
};

}  // namespace

SynthRun synth_run(TerrainClass terrain, double duration, double speed,
                   std::uint64_t seed, const VehicleParams& params,
                   const SynthOptions& options) {
  const Segment segment{terrain, duration};
  return synth_run_segments(std::span<const Segment>(&segment, 1), speed, seed,
                            params, options);
}

SynthRun synth_run_segments(std::span<const Segment> segments, double speed,
                            std::uint64_t seed, const VehicleParams& params,
                            const SynthOptions& options) {
  params.validate();
  if (segments.empty()) {
    throw InvalidArgumentError("need at least one terrain segment");
  }
  for (const Segment& s : segments) {
    if (!(s.duration > 0.0)) {
      throw InvalidArgumentError("segment durations must be positive");
    }
  }
  if (!(speed > 0.0)) throw InvalidArgumentError("speed must be positive");
  if (!(options.imu_rate > 0.0) || !(options.encoder_rate > 0.0) ||
      !(options.current_rate > 0.0) || !(options.frame_rate > 0.0)) {
    throw InvalidArgumentError("sample rates must be positive");
  }

  const double lookahead = options.strip_start + options.strip_depth + 0.5;

  const auto preset_for = [&options](TerrainClass terrain) {
    for (const TerrainPreset& p : options.preset_overrides) {
      if (p.terrain == terrain) return p;
    }
    return default_preset(terrain);
  };

  // --- terrain profile: per-segment synthesis, stitched continuously ------
  SegmentLayout layout;
  std::vector<TerrainPreset> presets;
  TerrainProfile profile;
  {
    double t0 = 0.0, d0 = 0.0, elevation_offset = 0.0;
    for (std::size_t k = 0; k < segments.size(); ++k) {
      layout.start_time.push_back(t0);
      layout.start_distance.push_back(d0);
      presets.push_back(preset_for(segments[k].terrain));
      const bool last = k + 1 == segments.size();
      const double seg_dist = speed * segments[k].duration;
      const double length = seg_dist + (last ? lookahead : 0.0);
      TerrainProfile part = synth_terrain_profile(
          presets.back(), length, substream(seed, 100 + k), params, speed,
          options.drift.profile_amplitude);
      std::size_t first = profile.distance.empty() ? 0 : 1;  // skip duplicate 0
      if (!profile.distance.empty()) {
        // Shift the new piece so elevation is continuous at the boundary.
        elevation_offset =
            profile.elevation.back() - part.elevation.front();
      }
      for (std::size_t i = first; i < part.distance.size(); ++i) {
        const double d = d0 + part.distance[i];
        if (!last && d > d0 + seg_dist) break;
        if (!profile.distance.empty() && d <= profile.distance.back()) continue;
        profile.distance.push_back(d);
        profile.elevation.push_back(part.elevation[i] + elevation_offset);
      }
      t0 += segments[k].duration;
      d0 += seg_dist;
    }
    layout.total_duration = t0;
    profile.label = segments.front().terrain;
    profile.dominant_wavelength =
        std::sqrt(presets.front().wavelength_min * presets.front().wavelength_max);
    profile.amplitude = 0.0;
  }
  const double total_duration = layout.total_duration;

  // --- vertical dynamics ---------------------------------------------------
  const QvTrajectory traj =
      simulate_qv(profile, speed, params, options.qv_dt, total_duration);

  // --- slow within-run drifts ----------------------------------------------
  std::mt19937_64 drift_rng(substream(seed, 1));
  const DriftSeries fr_drift(options.drift.motion_resistance_rel, 7.3, 13.7,
                             drift_rng);
  const DriftSeries slip_drift(options.drift.slip_abs, 7.9, 16.7, drift_rng);
  const DriftSeries tint_r(options.drift.color_tint, 9.7, 21.3, drift_rng);
  const DriftSeries tint_g(options.drift.color_tint, 10.9, 19.1, drift_rng);
  const DriftSeries tint_b(options.drift.color_tint, 8.3, 23.9, drift_rng);
  const DriftSeries spot_drift(options.drift.spot_weight, 11.3, 25.1, drift_rng);

  const auto pitch_at = [&](double t) {
    if (options.pitch.amplitude == 0.0) return 0.0;
    return options.pitch.amplitude * std::sin(kTwoPi * t / options.pitch.period);
  };

  SynthRun run;
  SensorSeries& series = run.series;

  // --- IMU -------------------------------------------------------------
  {
    std::mt19937_64 rng(substream(seed, 2));
    std::normal_distribution<double> noise(0.0, options.noise.accel);
    const auto count =
        static_cast<std::size_t>(std::floor(total_duration * options.imu_rate));
    series.imu.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double t = static_cast<double>(k) / options.imu_rate;
      const double theta = pitch_at(t);
      ImuSample s;
      s.t = t;
      s.attitude = {0.0, theta, 0.0};
      const double dyn = sample_series(traj.acceleration, options.qv_dt, t);
      s.accel = {noise(rng), noise(rng),
                 dyn - kGravity * std::cos(theta) + noise(rng)};
      series.imu.push_back(s);
    }
  }

  // --- encoders --------------------------------------------------------
  {
    std::mt19937_64 rng(substream(seed, 3));
    std::normal_distribution<double> noise(0.0, options.noise.encoder);
    const auto count = static_cast<std::size_t>(
        std::floor(total_duration * options.encoder_rate));
    series.encoders.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double t = static_cast<double>(k) / options.encoder_rate;
      const auto seg = layout.index_at_time(t);
      const double s = presets[seg].mean_slip + slip_drift(t);
      const double omega = speed / (params.wheel_radius * (1.0 - s));
      EncoderSample e;
      e.t = t;
      for (int w = 0; w < 4; ++w) e.omega[w] = omega + noise(rng);
      series.encoders.push_back(e);
    }
  }

  // --- motor currents ----------------------------------------------------
  // One motor per side; the commanded torque balances rolling resistance on
  // that side's share of the load plus the longitudinal weight component, so
  // the current carries the grade term that load compensation removes.
  {
    std::mt19937_64 rng(substream(seed, 4));
    std::normal_distribution<double> noise(0.0, options.noise.current);
    const double torque_to_force =
        params.gear_ratio * params.torque_constant / params.wheel_radius;
    const auto count = static_cast<std::size_t>(
        std::floor(total_duration * options.current_rate));
    series.currents.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double t = static_cast<double>(k) / options.current_rate;
      const auto seg = layout.index_at_time(t);
      const double fr =
          presets[seg].mean_motion_resistance * (1.0 + fr_drift(t));
      const double theta = pitch_at(t);
      const WheelLoads loads = wheel_loads(params, {0.0, theta, 0.0});
      const double grade_per_side = 0.5 * params.weight * std::sin(theta);
      CurrentSample c;
      c.t = t;
      c.left = (fr * loads.left() + grade_per_side) / torque_to_force + noise(rng);
      c.right =
          (fr * loads.right() + grade_per_side) / torque_to_force + noise(rng);
      series.currents.push_back(c);
    }
  }

  // --- poses (visual odometry, frame-aligned) ----------------------------
  {
    const auto count = static_cast<std::size_t>(
        std::floor(total_duration * options.frame_rate));
    series.poses.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double t = static_cast<double>(k) / options.frame_rate;
      PoseSample p;
      p.t = t;
      p.position = {speed * t, 0.0, params.cg_height};
      p.attitude = {0.0, pitch_at(t), 0.0};
      series.poses.push_back(p);
    }
  }

  // --- stereo frames -----------------------------------------------------
  {
    std::mt19937_64 rng(substream(seed, 5));
    std::normal_distribution<double> unit_noise(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const auto count = static_cast<std::size_t>(
        std::floor(total_duration * options.frame_rate));
    series.frames.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double t = static_cast<double>(k) / options.frame_rate;
      const PoseSample& pose = series.poses[k];
      const double tint[3] = {1.0 + tint_r(t), 1.0 + tint_g(t), 1.0 + tint_b(t)};

      CloudFrame frame;
      frame.t = t;
      frame.points.reserve(
          static_cast<std::size_t>(options.strip_rows * options.strip_cols));
      for (int row = 0; row < options.strip_rows; ++row) {
        const double x_body = options.strip_start +
                              (row + 0.5) * options.strip_depth /
                                  options.strip_rows;
        for (int col = 0; col < options.strip_cols; ++col) {
          const double y_body =
              -0.5 * options.strip_width +
              (col + 0.5) * options.strip_width / options.strip_cols;
          const double x_world = pose.position.x() + x_body;
          const double y_world = y_body;
          const auto seg = layout.index_at_distance(x_world);
          const ClassAppearance& look = appearance_for(segments[seg].terrain);

          double z_world = elevation_at(profile, x_world);
          if (look.furrow_amplitude > 0.0) {
            z_world += look.furrow_amplitude *
                       std::sin(kTwoPi * x_world / look.furrow_wavelength);
          }
          z_world += look.relief_std * unit_noise(rng);

          const double spot_w = std::clamp(
              look.spot_weight + spot_drift(t), 0.02, 0.60);
          const bool spot = uniform(rng) < spot_w;
          const auto& mean = spot ? look.secondary_mean : look.primary_mean;
          const auto& std_dev = spot ? look.secondary_std : look.primary_std;

          ColoredPoint p;
          // Body frame: undo the pose transform used when stitching.
          const double theta = pose.attitude.pitch;
          const Eigen::Vector3d world(x_world, y_world, z_world);
          const Eigen::Vector3d rel = world - pose.position;
          p.position = {std::cos(theta) * rel.x() - std::sin(theta) * rel.z(),
                        rel.y(),
                        std::sin(theta) * rel.x() + std::cos(theta) * rel.z()};
          for (int ch = 0; ch < 3; ++ch) {
            const double value =
                (mean[ch] + std_dev[ch] * unit_noise(rng)) * tint[ch];
            p.rgb[ch] = std::clamp(value, 0.0, 255.0);
          }
          frame.points.push_back(p);
        }
      }
      series.frames.push_back(std::move(frame));
    }
  }

  // --- ground-truth patches ----------------------------------------------
  {
    SegmentationConfig seg_cfg;
    StitchResult stitched = stitch_patches(series.frames, series.poses, seg_cfg);
    for (TerrainPatch& patch : stitched.patches) {
      const auto seg = layout.index_at_distance(patch.centroid.x());
      patch.label = segments[seg].terrain;
    }
    run.patches = std::move(stitched.patches);
  }
  return run;
}

}  // namespace terrasense

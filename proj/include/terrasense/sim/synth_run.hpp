#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "terrasense/core/types.hpp"
#include "terrasense/mapping/patch.hpp"
#include "terrasense/sim/presets.hpp"

namespace terrasense {

struct SynthNoise {
  double accel = 0.005;     // m/s^2, per IMU axis
  double current = 0.01;    // A, per side
  double encoder = 0.01;    // rad/s, per wheel
};

/// Slow seeded within-run variation so patches of one class are not
/// carbon copies. Each value is the std of a zero-mean two-sinusoid process.
struct SynthDrift {
  double motion_resistance_rel = 0.12;  // relative on f_r
  double slip_abs = 6e-4;               // absolute on slip
  double color_tint = 0.05;             // relative per colour channel
  double spot_weight = 0.10;            // absolute on secondary-colour weight
  double profile_amplitude = 0.15;      // relative envelope on the profile
};

/// Optional sinusoidal pitch excursion (climbing/descending swells); used to
/// exercise load-compensated motion-resistance estimation.
struct PitchModulation {
  double amplitude = 0.0;  // rad
  double period = 8.0;     // s
};

struct SynthOptions {
  double imu_rate = 100.0;     // Hz
  double encoder_rate = 20.0;  // Hz
  double current_rate = 20.0;  // Hz
  double frame_rate = 8.5;     // Hz, stereo frames and visual-odometry poses
  SynthNoise noise;
  SynthDrift drift;
  PitchModulation pitch;
  double qv_dt = 1e-3;  // s, quarter-vehicle integration step

  // Ground strip seen by the stereo camera, vehicle frame.
  double strip_start = 0.30;  // m ahead of the body origin
  double strip_depth = 0.47;  // m
  double strip_width = 0.70;  // m
  int strip_rows = 18;
  int strip_cols = 12;

  // Each entry replaces the built-in preset of its terrain class.
  std::vector<TerrainPreset> preset_overrides;
};

struct Segment {
  TerrainClass terrain = TerrainClass::DirtRoad;
  double duration = 0.0;  // s
};

struct SynthRun {
  SensorSeries series;
  std::vector<TerrainPatch> patches;  // stitched, ground-truth labelled
};

/// Generate a synthetic sensor log of a constant-speed straight run over one
/// terrain class. Identical arguments produce bit-identical output.
SynthRun synth_run(TerrainClass terrain, double duration, double speed,
                   std::uint64_t seed, const VehicleParams& params = {},
                   const SynthOptions& options = {});

/// Multi-segment variant: the vehicle crosses the listed terrains in order.
SynthRun synth_run_segments(std::span<const Segment> segments, double speed,
                            std::uint64_t seed, const VehicleParams& params = {},
                            const SynthOptions& options = {});

}  // namespace terrasense

#pragma once

#include <cstdint>
#include <filesystem>

#include "terrasense/core/types.hpp"
#include "terrasense/sim/quarter_vehicle.hpp"

namespace terrasense {

/// Per-terrain generator targets. mean_slip and accel_std_target reproduce
/// the field measurements the models were calibrated against; the motion
/// resistance coefficients and wavelength bands are configuration values
/// chosen to give each surface a plausible, distinct signature.
struct TerrainPreset {
  TerrainClass terrain = TerrainClass::DirtRoad;
  double mean_slip = 0.0;             // dimensionless
  double accel_std_target = 0.0;      // m/s^2, gravity-compensated vertical
  double mean_motion_resistance = 0.0;  // f_r, dimensionless
  double wavelength_min = 0.3;        // m, profile spectrum band
  double wavelength_max = 2.0;        // m
  int components = 10;                // sinusoids in the band
};

TerrainPreset default_preset(TerrainClass terrain);

/// Key-value text format: one `key = value` per line, `#` comments.
/// Keys: class, mean_slip, accel_std, mean_motion_resistance,
/// wavelength_min, wavelength_max, components.
TerrainPreset load_preset(const std::filesystem::path& file);
void save_preset(const TerrainPreset& preset, const std::filesystem::path& file);

/// Build a sum-of-sinusoids elevation profile of the given length whose
/// quarter-vehicle response at `calibration_speed` matches the preset's
/// vertical-acceleration std. Component wavelengths are log-spaced across
/// the preset band with seeded phases; `amplitude_modulation` adds a slow
/// seeded envelope so roughness drifts within a run. Calibration rescales
/// the amplitude (exact in one step by linearity) and throws
/// CalibrationError if the measured std cannot be brought within 10% of the
/// target in a bounded number of passes.
TerrainProfile synth_terrain_profile(const TerrainPreset& preset, double length,
                                     std::uint64_t seed,
                                     const VehicleParams& params = {},
                                     double calibration_speed = 0.5,
                                     double amplitude_modulation = 0.15);

}  // namespace terrasense

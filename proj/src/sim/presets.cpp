#include "terrasense/sim/presets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "terrasense/core/errors.hpp"

namespace terrasense {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_preset(const TerrainPreset& p) {
  if (!(p.wavelength_min > 0.0) || !(p.wavelength_max >= p.wavelength_min)) {
    throw InvalidArgumentError("preset wavelength band must satisfy 0 < min <= max");
  }
  if (p.components < 1) {
    throw InvalidArgumentError("preset needs at least one spectral component");
  }
  if (p.mean_slip < 0.0 || p.mean_slip > 1.0) {
    throw InvalidArgumentError("preset mean slip must lie in [0, 1]");
  }
  if (p.accel_std_target < 0.0 || p.mean_motion_resistance < 0.0) {
    throw InvalidArgumentError("preset targets must be non-negative");
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

TerrainPreset default_preset(TerrainClass terrain) {
  TerrainPreset p;
  p.terrain = terrain;
  switch (terrain) {
    case TerrainClass::PloughedTerrain:
      p.mean_slip = 0.0057;
      p.accel_std_target = 0.084;
      p.mean_motion_resistance = 0.15;
      p.wavelength_min = 0.3;
      p.wavelength_max = 1.5;
      break;
    case TerrainClass::UnploughedTerrain:
      p.mean_slip = 0.0029;
      p.accel_std_target = 0.053;
      p.mean_motion_resistance = 0.08;
      p.wavelength_min = 0.4;
      p.wavelength_max = 2.0;
      break;
    case TerrainClass::DirtRoad:
      p.mean_slip = 0.0021;
      p.accel_std_target = 0.026;
      p.mean_motion_resistance = 0.05;
      p.wavelength_min = 0.6;
      p.wavelength_max = 3.0;
      break;
    case TerrainClass::Gravel:
      p.mean_slip = 0.0041;
      p.accel_std_target = 0.063;
      p.mean_motion_resistance = 0.10;
      p.wavelength_min = 0.15;
      p.wavelength_max = 0.8;
      break;
  }
  return p;
}

TerrainPreset load_preset(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open preset file " + file.string());
  TerrainPreset p;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    try {
      if (key == "class") {
        p.terrain = terrain_class_from_string(value);
      } else if (key == "mean_slip") {
        p.mean_slip = std::stod(value);
      } else if (key == "accel_std") {
        p.accel_std_target = std::stod(value);
      } else if (key == "mean_motion_resistance") {
        p.mean_motion_resistance = std::stod(value);
      } else if (key == "wavelength_min") {
        p.wavelength_min = std::stod(value);
      } else if (key == "wavelength_max") {
        p.wavelength_max = std::stod(value);
      } else if (key == "components") {
        p.components = std::stoi(value);
      } else {
        throw ParseError(line_no, "unknown preset key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(line_no, "invalid value for preset key '" + key + "'");
    }
  }
  validate_preset(p);
  return p;
}

void save_preset(const TerrainPreset& preset, const std::filesystem::path& file) {
  validate_preset(preset);
  std::ofstream out(file);
  if (!out) throw IoError("cannot write preset file " + file.string());
  char buf[128];
  out << "class = " << to_string(preset.terrain) << "\n";
  std::snprintf(buf, sizeof buf, "mean_slip = %.17g\n", preset.mean_slip);
  out << buf;
  std::snprintf(buf, sizeof buf, "accel_std = %.17g\n", preset.accel_std_target);
  out << buf;
  std::snprintf(buf, sizeof buf, "mean_motion_resistance = %.17g\n",
                preset.mean_motion_resistance);
  out << buf;
  std::snprintf(buf, sizeof buf, "wavelength_min = %.17g\n", preset.wavelength_min);
  out << buf;
  std::snprintf(buf, sizeof buf, "wavelength_max = %.17g\n", preset.wavelength_max);
  out << buf;
  out << "components = " << preset.components << "\n";
  if (!out) throw IoError("failed writing preset file " + file.string());
}

TerrainProfile synth_terrain_profile(const TerrainPreset& preset, double length,
                                     std::uint64_t seed,
                                     const VehicleParams& params,
                                     double calibration_speed,
                                     double amplitude_modulation) {
  validate_preset(preset);
  params.validate();
  if (!(length > 0.0)) throw InvalidArgumentError("profile length must be positive");
  if (!(calibration_speed > 0.0)) {
    throw InvalidArgumentError("calibration speed must be positive");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);

  const int n = preset.components;
  std::vector<double> wavelengths(n), phases(n);
  for (int j = 0; j < n; ++j) {
    const double u = n > 1 ? static_cast<double>(j) / (n - 1) : 0.5;
    wavelengths[j] =
        preset.wavelength_min *
        std::pow(preset.wavelength_max / preset.wavelength_min, u);
    phases[j] = phase(rng);
  }
  const double env_phase_a = phase(rng);
  const double env_phase_b = phase(rng);

  TerrainProfile profile;
  profile.label = preset.terrain;
  profile.dominant_wavelength =
      std::sqrt(preset.wavelength_min * preset.wavelength_max);

  const double step = std::min(preset.wavelength_min / 64.0, 0.01);
  const auto count = static_cast<std::size_t>(std::ceil(length / step)) + 2;
  profile.distance.resize(count);
  profile.elevation.resize(count);

  std::vector<double> unit(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = static_cast<double>(i) * step;
    profile.distance[i] = d;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += std::sin(kTwoPi * d / wavelengths[j] + phases[j]);
    }
    const double envelope =
        1.0 + amplitude_modulation * (std::sin(kTwoPi * d / 6.1 + env_phase_a) +
                                      std::sin(kTwoPi * d / 13.9 + env_phase_b));
    unit[i] = s * envelope;
  }

  if (preset.accel_std_target <= 0.0) {
    profile.amplitude = 0.0;
    return profile;  // elevation stays zero
  }

  const double duration = std::min(length / calibration_speed, 120.0);
  const double settle = std::min(1.0, 0.25 * duration);
  const double dt = 1e-3;
  double amplitude = 1e-3;
  bool calibrated = false;
  for (int pass = 0; pass < 4 && !calibrated; ++pass) {
    for (std::size_t i = 0; i < count; ++i) {
      profile.elevation[i] = amplitude * unit[i];
    }
    const QvTrajectory traj =
        simulate_qv(profile, calibration_speed, params, dt, duration);
    double sum = 0.0, sum2 = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      if (traj.t[i] < settle) continue;
      sum += traj.acceleration[i];
      sum2 += traj.acceleration[i] * traj.acceleration[i];
      ++m;
    }
    if (m == 0) throw CalibrationError("calibration window contains no samples");
    const double mean = sum / static_cast<double>(m);
    const double var = sum2 / static_cast<double>(m) - mean * mean;
    const double measured = std::sqrt(std::max(var, 0.0));
    if (!(measured > 0.0)) {
      throw CalibrationError("quarter-vehicle response has zero variance");
    }
    if (std::abs(measured - preset.accel_std_target) <=
        0.1 * preset.accel_std_target) {
      calibrated = true;
    } else {
      amplitude *= preset.accel_std_target / measured;
    }
  }
  if (!calibrated) {
    throw CalibrationError("profile amplitude calibration did not converge");
  }
  profile.amplitude = amplitude;
  return profile;
}

}  // namespace terrasense

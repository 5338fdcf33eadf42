#pragma once

#include <vector>

#include "terrasense/core/types.hpp"

namespace terrasense {

/// Elevation profile along the vehicle path. Distances strictly increasing;
/// elevation is linearly interpolated between samples.
struct TerrainProfile {
  std::vector<double> distance;   // m
  std::vector<double> elevation;  // m
  TerrainClass label = TerrainClass::DirtRoad;
  double dominant_wavelength = 1.0;  // m
  double amplitude = 0.0;            // calibrated component amplitude, m
};

/// Temporal excitation frequency of terrain of wavelength `wavelength`
/// traversed at `speed`: omega_e = 2 pi V / lambda, rad/s.
double excitation_frequency(double speed, double wavelength);

/// Magnitude of the ground-displacement-to-body-acceleration transfer
/// function of the 1-DOF quarter-vehicle model, s^-2.
double transfer_magnitude(double omega_e, const VehicleParams& params);

struct QvTrajectory {
  std::vector<double> t;             // s
  std::vector<double> position;      // z_b, m
  std::vector<double> velocity;      // m/s
  std::vector<double> acceleration;  // m/s^2
};

/// Integrate m_b z_b'' = k_w (z_d - z_b) + c_w (z_d' - z_b') with fixed-step
/// RK4. The ground input z_d(t) is the profile elevation at distance V*t with
/// the interpolant's analytic derivative. The sprung mass starts on the
/// profile with matched velocity. Requires dt <= 1/(20 f_n) and a profile
/// covering V*duration.
QvTrajectory simulate_qv(const TerrainProfile& profile, double speed,
                         const VehicleParams& params, double dt,
                         double duration);

}  // namespace terrasense

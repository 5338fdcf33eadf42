#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace terrasense {

inline constexpr double kGravity = 9.81;  // m s^-2

/// Physical and drivetrain parameters of the platform. Defaults describe the
/// Husky A200 skid-steer used to calibrate the simulator.
struct VehicleParams {
  double width = 0.54;           // B, m (track)
  double length = 0.70;          // L, m (wheelbase)
  double weight = 313.6;         // W, N (total, payload included)
  double cg_height = 0.20;       // h, m above ground (configuration value)
  double wheel_radius = 0.165;   // r, m (undeformed)
  double torque_constant = 0.044;  // k_t, Nm/A
  double gear_ratio = 78.71;     // tau
  double sprung_mass = 8.0;      // m_b, kg (quarter-vehicle share)
  double wheel_stiffness = 1.0e4;  // k_w, N/m
  double wheel_damping = 200.0;  // c_w, Ns/m

  void validate() const;  // throws InvalidArgumentError on non-positive fields

  /// Undamped natural frequency of the quarter-vehicle model, Hz.
  double natural_frequency_hz() const;
};

/// Roll/pitch/yaw attitude, radians. Roll and pitch must stay inside
/// (-pi/2, pi/2) for the quasi-static load model to be meaningful.
struct Attitude {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

struct PoseSample {
  double t = 0.0;                // s
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // world frame, m
  Attitude attitude;
};

struct ImuSample {
  double t = 0.0;
  Eigen::Vector3d accel = Eigen::Vector3d::Zero();  // body frame, gravity included
  Attitude attitude;
};

/// Wheel order everywhere: front-left, rear-left, front-right, rear-right.
struct EncoderSample {
  double t = 0.0;
  std::array<double, 4> omega{};  // rad/s
};

struct CurrentSample {
  double t = 0.0;
  double left = 0.0;   // A, one motor per side
  double right = 0.0;  // A
};

/// One 3D point with RGB colour. Colour channels are stored as doubles in
/// [0, 255] so that photometric transformations stay exact.
struct ColoredPoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  std::array<double, 3> rgb{};
};

/// A stereo frame: points are expressed in the camera (vehicle body) frame.
struct CloudFrame {
  double t = 0.0;
  std::vector<ColoredPoint> points;
  std::string file;  // sidecar CSV reference, relative to the log
};

/// Time-aligned sensor streams. Each stream is individually ordered by
/// strictly increasing timestamps; streams are asynchronous and consumers
/// resample by nearest timestamp.
struct SensorSeries {
  std::vector<ImuSample> imu;
  std::vector<EncoderSample> encoders;
  std::vector<CurrentSample> currents;
  std::vector<PoseSample> poses;
  std::vector<CloudFrame> frames;

  bool empty() const {
    return imu.empty() && encoders.empty() && currents.empty() &&
           poses.empty() && frames.empty();
  }
};

enum class TerrainClass : std::uint8_t {
  PloughedTerrain = 0,
  UnploughedTerrain = 1,
  DirtRoad = 2,
  Gravel = 3,
};

inline constexpr int kNumTerrainClasses = 4;

std::string to_string(TerrainClass c);
TerrainClass terrain_class_from_string(const std::string& name);

/// Human-readable label used in report tables ("Ploughed terrain", ...).
std::string display_name(TerrainClass c);

}  // namespace terrasense

#pragma once

#include <span>
#include <vector>

#include "terrasense/core/types.hpp"

namespace terrasense {

/// Quasi-static vertical wheel loads, N. Wheel order: front-left, rear-left,
/// front-right, rear-right. `tip_over` is set when any load goes negative,
/// i.e. the quasi-static model left its validity region.
struct WheelLoads {
  std::array<double, 4> fz{};
  bool tip_over = false;

  double sum() const { return fz[0] + fz[1] + fz[2] + fz[3]; }
  double left() const { return fz[0] + fz[1]; }
  double right() const { return fz[2] + fz[3]; }
};

/// Sign convention for the rear-right roll term. `Balanced` keeps vertical
/// equilibrium and roll/pitch moment balance; `UnbalancedRearRight` carries
/// the left-side sign on the rear-right wheel (the loads then no longer sum
/// to W cos(pitch) cos(roll)) and exists only for comparison.
enum class WheelLoadModel { Balanced, UnbalancedRearRight };

/// Distribute the vehicle weight over the four wheels for a given attitude.
/// Requires |roll|, |pitch| < pi/2.
WheelLoads wheel_loads(const VehicleParams& params, const Attitude& attitude,
                       WheelLoadModel model = WheelLoadModel::Balanced);

/// Motion-resistance coefficient from motor current and vertical load:
/// f_r = (tau * k_t / r) * (I / F_z).
double motion_resistance(double current, double vertical_load,
                         const VehicleParams& params);

/// Longitudinal slip (travel reduction). Values below -0.05 are clamped and
/// flagged; S = 1 exactly when the vehicle is stationary with spinning wheels.
struct SlipEstimate {
  double value = 0.0;
  bool out_of_range = false;
};

SlipEstimate slip(double actual_speed, double wheel_omega, double wheel_radius);

/// Gravity-compensated vertical acceleration statistics over an IMU window:
/// a_z' = a_z_body + g cos(pitch) cos(roll), then rms and population std.
struct AccelStats {
  double rms = 0.0;
  double std_dev = 0.0;
};

AccelStats vertical_accel_stats(std::span<const ImuSample> window,
                                double gravity = kGravity);

/// The proprioceptive feature family of one traversal window.
struct ContactFeatures {
  double motion_resistance = 0.0;  // mean f_r, dimensionless
  double slip = 0.0;               // mean travel reduction
  double accel_rms = 0.0;          // m s^-2
  double accel_std = 0.0;          // m s^-2
  bool slip_flagged = false;       // some samples fell outside (-0.05, 1]

  std::array<double, 4> flat() const {
    return {motion_resistance, slip, accel_rms, accel_std};
  }
};

struct ContactConfig {
  double max_gap = 0.2;  // s, nearest-sample resampling tolerance
  double straight_yaw_rate_max = 0.05;  // rad/s, slip gating threshold
  double gravity = kGravity;
};

/// Per-sample motion-resistance estimates over a window, one value per
/// current sample (left/right averaged).
enum class LoadCompensation {
  /// Level-ground loads (W/2 per side) and no grade term.
  None,
  /// Attitude-aware quasi-static loads; the longitudinal weight component
  /// W sin(pitch) is removed from the measured tractive force before the
  /// resistance ratio is formed.
  AttitudeQuasiStatic,
};

std::vector<double> motion_resistance_samples(
    const SensorSeries& series, double t0, double t1,
    const VehicleParams& params, LoadCompensation compensation,
    const ContactConfig& config = {});

/// Full contact vector over [t0, t1]. Requires imu, enc, cur and pose
/// coverage with gaps below config.max_gap; raises MissingDataError naming
/// the missing stream otherwise. Slip uses only straight-motion samples
/// (|yaw rate| below threshold) and the vehicle speed comes from
/// central-differenced pose positions.
ContactFeatures contact_feature_vector(const SensorSeries& series, double t0,
                                       double t1, const VehicleParams& params,
                                       const ContactConfig& config = {});

}  // namespace terrasense

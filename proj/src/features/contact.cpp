#include "terrasense/features/contact.hpp"

#include <cmath>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/series.hpp"

namespace terrasense {
namespace {

// Speed and yaw rate at pose index j from a 3-sample central-difference
// stencil. Valid for interior indices only.
struct PoseRates {
  double speed = 0.0;
  double yaw_rate = 0.0;
};

PoseRates pose_rates(const std::vector<PoseSample>& poses, std::size_t j) {
  const auto& a = poses[j - 1];
  const auto& b = poses[j + 1];
  const double dt = b.t - a.t;
  PoseRates r;
  r.speed = (b.position - a.position).norm() / dt;
  r.yaw_rate = (b.attitude.yaw - a.attitude.yaw) / dt;
  return r;
}

void require_coverage(const SensorSeries& series, double t0, double t1,
                      double max_gap) {
  if (!covers_window(series.imu, t0, t1, max_gap))
    throw MissingDataError("imu", "stream does not cover the window");
  if (!covers_window(series.encoders, t0, t1, max_gap))
    throw MissingDataError("enc", "stream does not cover the window");
  if (!covers_window(series.currents, t0, t1, max_gap))
    throw MissingDataError("cur", "stream does not cover the window");
  if (!covers_window(series.poses, t0, t1, max_gap))
    throw MissingDataError("pose", "stream does not cover the window");
}

}  // namespace

WheelLoads wheel_loads(const VehicleParams& params, const Attitude& attitude,
                       WheelLoadModel model) {
  if (!std::isfinite(attitude.roll) || !std::isfinite(attitude.pitch) ||
      std::abs(attitude.roll) >= M_PI / 2 ||
      std::abs(attitude.pitch) >= M_PI / 2) {
    throw InvalidArgumentError(
        "wheel_loads: roll and pitch must lie inside (-pi/2, pi/2)");
  }
  const double w = params.weight;
  const double cphi = std::cos(attitude.roll), sphi = std::sin(attitude.roll);
  const double cth = std::cos(attitude.pitch), sth = std::sin(attitude.pitch);

  const double base = 0.25 * w * cphi * cth;
  const double pitch_term = 0.5 * w * sth * params.cg_height / params.length;
  const double roll_term =
      0.5 * w * cth * sphi * params.cg_height / params.width;

  WheelLoads loads;
  loads.fz[0] = base + pitch_term - roll_term;  // front-left
  loads.fz[1] = base - pitch_term - roll_term;  // rear-left
  loads.fz[2] = base + pitch_term + roll_term;  // front-right
  loads.fz[3] = (model == WheelLoadModel::Balanced)
                    ? base - pitch_term + roll_term  // rear-right
                    : base - pitch_term - roll_term;
  for (double f : loads.fz) {
    if (f < 0.0) loads.tip_over = true;
  }
  return loads;
}

double motion_resistance(double current, double vertical_load,
                         const VehicleParams& params) {
  if (!(vertical_load > 0.0)) {
    throw InvalidLoadError("motion_resistance: vertical load must be positive");
  }
  if (current < 0.0) {
    throw InvalidArgumentError("motion_resistance: negative current");
  }
  return params.gear_ratio * params.torque_constant / params.wheel_radius *
         current / vertical_load;
}

SlipEstimate slip(double actual_speed, double wheel_omega,
                  double wheel_radius) {
  if (!(wheel_radius > 0.0)) {
    throw InvalidArgumentError("slip: wheel radius must be positive");
  }
  if (actual_speed < 0.0) {
    throw InvalidArgumentError("slip: negative speed");
  }
  if (!(wheel_omega > 0.0)) {
    throw InvalidKinematicsError(
        "slip: wheel angular velocity must be positive during forward drive");
  }
  SlipEstimate s;
  s.value = 1.0 - actual_speed / (wheel_omega * wheel_radius);
  if (s.value < -0.05) {
    s.value = -0.05;
    s.out_of_range = true;
  }
  return s;
}

AccelStats vertical_accel_stats(std::span<const ImuSample> window,
                                double gravity) {
  if (window.empty()) {
    throw EmptyWindowError("vertical_accel_stats: empty window");
  }
  const double n = static_cast<double>(window.size());
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : window) {
    const double az = s.accel.z() + gravity * std::cos(s.attitude.pitch) *
                                        std::cos(s.attitude.roll);
    sum += az;
    sum_sq += az * az;
  }
  AccelStats stats;
  stats.rms = std::sqrt(sum_sq / n);
  const double mean = sum / n;
  stats.std_dev = std::sqrt(std::max(sum_sq / n - mean * mean, 0.0));
  return stats;
}

std::vector<double> motion_resistance_samples(const SensorSeries& series,
                                              double t0, double t1,
                                              const VehicleParams& params,
                                              LoadCompensation compensation,
                                              const ContactConfig& config) {
  auto [first, last] = samples_in_window(series.currents, t0, t1);
  std::vector<double> out;
  out.reserve(last - first);
  const double torque_to_force =
      params.gear_ratio * params.torque_constant / params.wheel_radius;

  for (std::size_t i = first; i < last; ++i) {
    const auto& cur = series.currents[i];
    double fz_left = 0.5 * params.weight;
    double fz_right = 0.5 * params.weight;
    double grade_force_per_side = 0.0;
    if (compensation == LoadCompensation::AttitudeQuasiStatic) {
      auto imu_idx = nearest_sample(series.imu, cur.t, config.max_gap);
      if (!imu_idx) {
        throw MissingDataError("imu", "no attitude sample near current sample");
      }
      const Attitude& att = series.imu[*imu_idx].attitude;
      const WheelLoads loads = wheel_loads(params, att);
      fz_left = loads.left();
      fz_right = loads.right();
      grade_force_per_side = 0.5 * params.weight * std::sin(att.pitch);
    }
    if (!(fz_left > 0.0) || !(fz_right > 0.0)) {
      throw InvalidLoadError("motion resistance: non-positive side load");
    }
    const double fr_left =
        (torque_to_force * cur.left - grade_force_per_side) / fz_left;
    const double fr_right =
        (torque_to_force * cur.right - grade_force_per_side) / fz_right;
    out.push_back(0.5 * (fr_left + fr_right));
  }
  return out;
}

ContactFeatures contact_feature_vector(const SensorSeries& series, double t0,
                                       double t1, const VehicleParams& params,
                                       const ContactConfig& config) {
  require_coverage(series, t0, t1, config.max_gap);

  ContactFeatures features;

  const auto fr =
      motion_resistance_samples(series, t0, t1, params,
                                LoadCompensation::AttitudeQuasiStatic, config);
  if (fr.empty()) {
    throw MissingDataError("cur", "no current samples inside the window");
  }
  double fr_sum = 0.0;
  for (double v : fr) fr_sum += v;
  features.motion_resistance = fr_sum / static_cast<double>(fr.size());

  auto [enc_first, enc_last] = samples_in_window(series.encoders, t0, t1);
  double slip_sum = 0.0;
  std::size_t slip_count = 0;
  for (std::size_t i = enc_first; i < enc_last; ++i) {
    const auto& enc = series.encoders[i];
    auto pose_idx = nearest_sample(series.poses, enc.t, config.max_gap);
    if (!pose_idx) {
      throw MissingDataError("pose", "no pose sample near encoder sample");
    }
    std::size_t j = *pose_idx;
    if (j == 0) j = 1;
    if (j + 1 >= series.poses.size()) j = series.poses.size() - 2;
    if (j == 0 || j + 1 >= series.poses.size()) {
      throw MissingDataError("pose", "too few poses for speed differencing");
    }
    const PoseRates rates = pose_rates(series.poses, j);
    if (std::abs(rates.yaw_rate) > config.straight_yaw_rate_max) {
      continue;  // slip is defined for straight motion only
    }
    const double omega_mean =
        0.25 * (enc.omega[0] + enc.omega[1] + enc.omega[2] + enc.omega[3]);
    const SlipEstimate s = slip(rates.speed, omega_mean, params.wheel_radius);
    slip_sum += s.value;
    features.slip_flagged = features.slip_flagged || s.out_of_range ||
                            s.value < 0.0;
    ++slip_count;
  }
  if (slip_count == 0) {
    throw MissingDataError("pose",
                           "no straight-motion samples for slip estimation");
  }
  features.slip = slip_sum / static_cast<double>(slip_count);

  auto [imu_first, imu_last] = samples_in_window(series.imu, t0, t1);
  const AccelStats stats = vertical_accel_stats(
      std::span<const ImuSample>(series.imu.data() + imu_first,
                                 imu_last - imu_first),
      config.gravity);
  features.accel_rms = stats.rms;
  features.accel_std = stats.std_dev;
  return features;
}

}  // namespace terrasense

#include "terrasense/sim/quarter_vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "terrasense/core/errors.hpp"

namespace terrasense {
namespace {

/// Piecewise-linear profile evaluator with a monotone cursor; simulate_qv
/// queries distances in nondecreasing order.
class ProfileInterpolator {
 public:
  explicit ProfileInterpolator(const TerrainProfile& p) : p_(p) {
    if (p.distance.size() < 2 || p.distance.size() != p.elevation.size()) {
      throw InvalidArgumentError(
          "terrain profile needs at least two (distance, elevation) samples");
    }
    for (std::size_t i = 1; i < p.distance.size(); ++i) {
      if (!(p.distance[i] > p.distance[i - 1])) {
        throw InvalidArgumentError("profile distances must strictly increase");
      }
    }
  }

  double elevation(double d) {
    const std::size_t i = segment(d);
    const double u = (d - p_.distance[i]) / (p_.distance[i + 1] - p_.distance[i]);
    return p_.elevation[i] + u * (p_.elevation[i + 1] - p_.elevation[i]);
  }

  double slope(double d) {
    const std::size_t i = segment(d);
    return (p_.elevation[i + 1] - p_.elevation[i]) /
           (p_.distance[i + 1] - p_.distance[i]);
  }

 private:
  std::size_t segment(double d) {
    if (d < p_.distance.front() || d > p_.distance.back()) {
      throw OutOfProfileError("requested distance outside terrain profile");
    }
    while (cursor_ + 2 < p_.distance.size() && d >= p_.distance[cursor_ + 1]) {
      ++cursor_;
    }
    while (cursor_ > 0 && d < p_.distance[cursor_]) {
      --cursor_;
    }
    return cursor_;
  }

  const TerrainProfile& p_;
  std::size_t cursor_ = 0;
};

}  // namespace

double excitation_frequency(double speed, double wavelength) {
  if (!(wavelength > 0.0)) {
    throw InvalidArgumentError("wavelength must be positive");
  }
  if (speed < 0.0) {
    throw InvalidArgumentError("speed must be non-negative");
  }
  return 2.0 * std::numbers::pi * speed / wavelength;
}

double transfer_magnitude(double omega_e, const VehicleParams& params) {
  params.validate();
  const double k = params.wheel_stiffness;
  const double c = params.wheel_damping;
  const double m = params.sprung_mass;
  const double w2 = omega_e * omega_e;
  const double num = k * k + c * c * w2;
  const double dk = k - m * w2;
  const double den = dk * dk + c * c * w2;
  return w2 * std::sqrt(num / den);
}

QvTrajectory simulate_qv(const TerrainProfile& profile, double speed,
                         const VehicleParams& params, double dt,
                         double duration) {
  params.validate();
  if (!(speed > 0.0)) throw InvalidArgumentError("speed must be positive");
  if (!(duration > 0.0)) throw InvalidArgumentError("duration must be positive");
  if (!(dt > 0.0)) throw StabilityError("step size must be positive");
  const double dt_max = 1.0 / (20.0 * params.natural_frequency_hz());
  if (dt > dt_max) {
    throw StabilityError("step size exceeds 1/(20 f_n) for this vehicle");
  }

  ProfileInterpolator ground(profile);
  if (profile.distance.front() > 0.0 ||
      profile.distance.back() < speed * duration) {
    throw OutOfProfileError("terrain profile does not cover the travelled distance");
  }

  const double k = params.wheel_stiffness;
  const double c = params.wheel_damping;
  const double m = params.sprung_mass;

  const auto accel = [&](double t, double z, double v) {
    const double d = speed * t;
    const double zd = ground.elevation(d);
    const double vd = speed * ground.slope(d);
    return (k * (zd - z) + c * (vd - v)) / m;
  };

  const auto n_steps = static_cast<std::size_t>(std::llround(duration / dt));
  QvTrajectory traj;
  traj.t.reserve(n_steps + 1);
  traj.position.reserve(n_steps + 1);
  traj.velocity.reserve(n_steps + 1);
  traj.acceleration.reserve(n_steps + 1);

  double z = ground.elevation(0.0);
  double v = speed * ground.slope(0.0);
  for (std::size_t step = 0; step <= n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    traj.t.push_back(t);
    traj.position.push_back(z);
    traj.velocity.push_back(v);
    traj.acceleration.push_back(accel(t, z, v));
    if (step == n_steps) break;

    const double a1 = accel(t, z, v);
    const double z2 = z + 0.5 * dt * v;
    const double v2 = v + 0.5 * dt * a1;
    const double a2 = accel(t + 0.5 * dt, z2, v2);
    const double z3 = z + 0.5 * dt * v2;
    const double v3 = v + 0.5 * dt * a2;
    const double a3 = accel(t + 0.5 * dt, z3, v3);
    const double z4 = z + dt * v3;
    const double v4 = v + dt * a3;
    const double a4 = accel(t + dt, z4, v4);
    z += dt / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + v4);
    v += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
  }
  return traj;
}

}  // namespace terrasense

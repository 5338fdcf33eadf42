#include <doctest.h>

#include <cmath>
#include <random>

#include "terrasense/core/errors.hpp"
#include "terrasense/features/contact.hpp"
#include "test_helpers.hpp"

using namespace terrasense;

namespace {
constexpr double kDeg = 3.14159265358979323846 / 180.0;

double torque_to_force(const VehicleParams& p) {
  return p.gear_ratio * p.torque_constant / p.wheel_radius;
}
}  // namespace

TEST_CASE("level ground splits the weight into four exact quarters") {
  const VehicleParams params;
  const WheelLoads loads = wheel_loads(params, {0.0, 0.0, 0.0});
  for (double f : loads.fz) CHECK(f == 78.4);
  CHECK(loads.sum() == doctest::Approx(313.6).epsilon(1e-15));
  CHECK_FALSE(loads.tip_over);
}

TEST_CASE("pitch shifts load to the front wheels by the lever ratio") {
  const VehicleParams params;
  const double theta = 5.0 * kDeg;
  const WheelLoads loads = wheel_loads(params, {0.0, theta, 0.0});
  const double base = 0.25 * 313.6 * std::cos(theta);
  const double shift = 0.5 * 313.6 * std::sin(theta) * 0.20 / 0.70;
  CHECK(loads.fz[0] == doctest::Approx(base + shift).epsilon(1e-12));
  CHECK(loads.fz[2] == doctest::Approx(base + shift).epsilon(1e-12));
  CHECK(loads.fz[1] == doctest::Approx(base - shift).epsilon(1e-12));
  CHECK(loads.fz[3] == doctest::Approx(base - shift).epsilon(1e-12));
  CHECK(loads.fz[0] == doctest::Approx(82.008).epsilon(1e-4));
  CHECK(loads.fz[1] == doctest::Approx(74.195).epsilon(1e-4));
}

TEST_CASE("roll shifts load towards the lower side") {
  const VehicleParams params;
  const double phi = 8.0 * kDeg;  // positive roll lowers the right side
  const WheelLoads loads = wheel_loads(params, {phi, 0.0, 0.0});
  CHECK(loads.right() > loads.left());
  CHECK(loads.fz[0] == doctest::Approx(loads.fz[1]).epsilon(1e-12));
  CHECK(loads.fz[2] == doctest::Approx(loads.fz[3]).epsilon(1e-12));
}

TEST_CASE("balanced model satisfies force and moment equilibrium") {
  const VehicleParams params;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-20.0 * kDeg, 20.0 * kDeg);
  for (int i = 0; i < 200; ++i) {
    const Attitude att{angle(rng), angle(rng), 0.0};
    const WheelLoads loads = wheel_loads(params, att);
    const double w = params.weight;
    const double normal_weight =
        w * std::cos(att.pitch) * std::cos(att.roll);
    CHECK(std::abs(loads.sum() - normal_weight) < 1e-9);

    // Wheel positions (x fwd, y left): FL, RL, FR, RR.
    const double half_l = 0.5 * params.length;
    const double half_b = 0.5 * params.width;
    const double x[4] = {half_l, -half_l, half_l, -half_l};
    const double y[4] = {half_b, half_b, -half_b, -half_b};
    double pitch_moment = 0.0, roll_moment = 0.0;
    for (int k = 0; k < 4; ++k) {
      pitch_moment += x[k] * loads.fz[k];
      roll_moment += y[k] * loads.fz[k];
    }
    // The load distribution must balance the weight components acting at
    // the centre of gravity height.
    const double h = params.cg_height;
    CHECK(std::abs(pitch_moment - h * w * std::sin(att.pitch)) < 1e-9);
    CHECK(std::abs(roll_moment +
                   h * w * std::cos(att.pitch) * std::sin(att.roll)) < 1e-9);
  }
}

TEST_CASE("the uncorrected variant reproduces the legacy rear-right load") {
  const VehicleParams params;
  const Attitude att{10.0 * kDeg, 4.0 * kDeg, 0.0};
  const WheelLoads balanced = wheel_loads(params, att);
  const WheelLoads legacy =
      wheel_loads(params, att, WheelLoadModel::UnbalancedRearRight);
  for (int k = 0; k < 3; ++k) CHECK(legacy.fz[k] == balanced.fz[k]);
  const double roll_term = 0.5 * params.weight * std::cos(att.pitch) *
                           std::sin(att.roll) * params.cg_height /
                           params.width;
  CHECK(legacy.fz[3] ==
        doctest::Approx(balanced.fz[3] - 2.0 * roll_term).epsilon(1e-12));
  // The legacy variant no longer balances the lateral moment.
  CHECK(std::abs(legacy.sum() - params.weight * std::cos(att.pitch) *
                                    std::cos(att.roll)) > 1e-3);
}

TEST_CASE("extreme attitudes flag tip-over or are rejected") {
  const VehicleParams params;
  const WheelLoads steep = wheel_loads(params, {0.0, 70.0 * kDeg, 0.0});
  CHECK(steep.tip_over);

  CHECK_THROWS_AS(wheel_loads(params, {0.0, 95.0 * kDeg, 0.0}),
                  InvalidArgumentError);
  CHECK_THROWS_AS(wheel_loads(params, {-95.0 * kDeg, 0.0, 0.0}),
                  InvalidArgumentError);
  CHECK_THROWS_AS(wheel_loads(params, {std::nan(""), 0.0, 0.0}),
                  InvalidArgumentError);
}

TEST_CASE("motion resistance follows the current-to-load ratio") {
  const VehicleParams params;
  // tau * k_t / r = 78.71 * 0.044 / 0.165
  CHECK(torque_to_force(params) == doctest::Approx(20.989333).epsilon(1e-6));
  CHECK(motion_resistance(1.0, 78.4, params) ==
        doctest::Approx(0.26772109).epsilon(1e-7));
  CHECK(motion_resistance(0.0, 100.0, params) == 0.0);
  CHECK_THROWS_AS(motion_resistance(1.0, 0.0, params), InvalidLoadError);
  CHECK_THROWS_AS(motion_resistance(1.0, -5.0, params), InvalidLoadError);
  CHECK_THROWS_AS(motion_resistance(-0.1, 78.4, params),
                  InvalidArgumentError);
}

TEST_CASE("slip matches the travel-reduction definition") {
  const SlipEstimate s = slip(0.45, 3.0303030303030303, 0.165);
  CHECK(s.value == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_FALSE(s.out_of_range);

  SUBCASE("zero slip at matched speeds") {
    const SlipEstimate zero = slip(0.5, 0.5 / 0.165, 0.165);
    CHECK(zero.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
  SUBCASE("large negative slip clamps and flags") {
    const SlipEstimate c = slip(0.6, 3.0303030303030303, 0.165);
    CHECK(c.value == -0.05);
    CHECK(c.out_of_range);
  }
  SUBCASE("mild negative slip is kept") {
    const SlipEstimate m = slip(0.51, 0.5 / 0.165, 0.165);
    CHECK(m.value == doctest::Approx(-0.02).epsilon(1e-10));
    CHECK_FALSE(m.out_of_range);
  }
  SUBCASE("invalid kinematics") {
    CHECK_THROWS_AS(slip(-0.1, 3.0, 0.165), InvalidArgumentError);
    CHECK_THROWS_AS(slip(0.5, 0.0, 0.165), InvalidKinematicsError);
    CHECK_THROWS_AS(slip(0.5, -1.0, 0.165), InvalidKinematicsError);
    CHECK_THROWS_AS(slip(0.5, 3.0, 0.0), InvalidArgumentError);
  }
}

TEST_CASE("vertical acceleration statistics remove gravity by attitude") {
  std::vector<ImuSample> window;
  const double amp = 0.3;
  const double pitch = 6.0 * kDeg;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    ImuSample s;
    s.t = i * 1e-3;
    const double wave = amp * std::sin(2.0 * M_PI * i / n);
    s.accel = {0.0, 0.0, wave - 9.81 * std::cos(pitch)};
    s.attitude = {0.0, pitch, 0.0};
    window.push_back(s);
  }
  const AccelStats stats = vertical_accel_stats(window, 9.81);
  // One exact period of a pure sinusoid: rms = std = amp / sqrt(2).
  CHECK(stats.rms == doctest::Approx(amp / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(stats.std_dev == doctest::Approx(amp / std::sqrt(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(vertical_accel_stats({}, 9.81), EmptyWindowError);
}

TEST_CASE("attitude compensation recovers the true motion resistance") {
  const VehicleParams params;
  const double fr_true = 0.05;
  const double pitch = 4.0 * kDeg;
  const double ttf = torque_to_force(params);

  testutil::StraightDriveSpec spec;
  spec.pitch = pitch;
  // Current consistent with the quasi-static side loads plus the grade term.
  const WheelLoads loads = wheel_loads(params, {0.0, pitch, 0.0});
  const double grade = 0.5 * params.weight * std::sin(pitch);
  spec.current_left = (fr_true * loads.left() + grade) / ttf;
  spec.current_right = (fr_true * loads.right() + grade) / ttf;
  const SensorSeries series = testutil::make_straight_drive(spec);

  const auto compensated = motion_resistance_samples(
      series, 0.5, 3.5, params, LoadCompensation::AttitudeQuasiStatic);
  REQUIRE_FALSE(compensated.empty());
  for (double v : compensated) {
    CHECK(v == doctest::Approx(fr_true).epsilon(1e-9));
  }

  const auto naive = motion_resistance_samples(series, 0.5, 3.5, params,
                                               LoadCompensation::None);
  REQUIRE(naive.size() == compensated.size());
  // Without compensation the grade current is misread as extra resistance.
  CHECK(std::abs(naive.front() - fr_true) > 0.02);
}

TEST_CASE("contact features summarise a synthetic straight drive") {
  const VehicleParams params;
  testutil::StraightDriveSpec spec;
  spec.duration = 4.0;
  spec.slip_value = 0.02;
  spec.accel_amplitude = 0.2;
  const double fr_true = 0.08;
  spec.current_left = fr_true * 0.5 * params.weight / torque_to_force(params);
  spec.current_right = spec.current_left;
  const SensorSeries series = testutil::make_straight_drive(spec);

  const ContactFeatures f = contact_feature_vector(series, 0.5, 3.5, params);
  CHECK(f.slip == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(f.motion_resistance == doctest::Approx(fr_true).epsilon(1e-9));
  CHECK(f.accel_std ==
        doctest::Approx(spec.accel_amplitude / std::sqrt(2.0)).epsilon(0.02));
  CHECK(f.accel_rms >= f.accel_std);
  CHECK_FALSE(f.slip_flagged);

  const auto flat = f.flat();
  CHECK(flat[0] == f.motion_resistance);
  CHECK(flat[1] == f.slip);
  CHECK(flat[2] == f.accel_rms);
  CHECK(flat[3] == f.accel_std);
}

TEST_CASE("negative slip sets the quality flag") {
  const VehicleParams params;
  testutil::StraightDriveSpec spec;
  spec.slip_value = -0.02;  // wheels slower than ground truth
  const SensorSeries series = testutil::make_straight_drive(spec);
  const ContactFeatures f = contact_feature_vector(series, 0.5, 3.5, params);
  CHECK(f.slip == doctest::Approx(-0.02).epsilon(1e-9));
  CHECK(f.slip_flagged);
}

TEST_CASE("missing stream coverage is reported with the stream name") {
  const VehicleParams params;
  testutil::StraightDriveSpec spec;
  SensorSeries series = testutil::make_straight_drive(spec);

  SUBCASE("imu truncated") {
    series.imu.resize(series.imu.size() / 4);
    try {
      contact_feature_vector(series, 0.5, 3.5, params);
      FAIL("expected MissingDataError");
    } catch (const MissingDataError& e) {
      CHECK(e.stream() == "imu");
    }
  }
  SUBCASE("encoder gap") {
    auto& enc = series.encoders;
    enc.erase(enc.begin() + 30, enc.begin() + 50);
    try {
      contact_feature_vector(series, 0.5, 3.5, params);
      FAIL("expected MissingDataError");
    } catch (const MissingDataError& e) {
      CHECK(e.stream() == "enc");
    }
  }
  SUBCASE("currents missing entirely") {
    series.currents.clear();
    CHECK_THROWS_AS(contact_feature_vector(series, 0.5, 3.5, params),
                    MissingDataError);
  }
}

TEST_CASE("slip sampling skips turning motion") {
  const VehicleParams params;
  testutil::StraightDriveSpec spec;
  spec.duration = 4.0;
  SensorSeries series = testutil::make_straight_drive(spec);
  // Give the second half of the track a strong yaw rate; those encoder
  // samples must not contribute to the slip estimate.
  const double t_split = 2.0;
  for (auto& pose : series.poses) {
    if (pose.t > t_split) pose.attitude.yaw = 0.5 * (pose.t - t_split);
  }
  const double omega_straight = series.encoders.front().omega[0];
  for (auto& enc : series.encoders) {
    if (enc.t > t_split + 0.2) {
      for (double& w : enc.omega) w = omega_straight * 2.0;  // absurd slip
    }
  }
  const ContactFeatures f = contact_feature_vector(series, 0.5, 3.5, params);
  CHECK(f.slip == doctest::Approx(spec.slip_value).epsilon(1e-6));

  // A window fully inside the turning part has no straight samples at all.
  CHECK_THROWS_AS(contact_feature_vector(series, 2.6, 3.4, params),
                  MissingDataError);
}

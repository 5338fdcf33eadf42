#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/log_io.hpp"
#include "test_helpers.hpp"

using namespace terrasense;

namespace {

bool exact_eq(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a.x() == b.x() && a.y() == b.y() && a.z() == b.z();
}

SensorSeries sample_series() {
  SensorSeries s;
  for (int i = 0; i < 3; ++i) {
    ImuSample imu;
    imu.t = 0.01 * i;
    imu.accel = {0.001 * i, -0.002 * i, -9.81 + 0.1 * i};
    imu.attitude = {0.01, -0.02, 0.5 * i};
    s.imu.push_back(imu);

    EncoderSample enc;
    enc.t = 0.05 * i + 0.001;
    enc.omega = {3.0 + i, 3.1, 3.2, 3.3};
    s.encoders.push_back(enc);

    s.currents.push_back({0.05 * i + 0.002, 0.4 + 0.01 * i, 0.41});

    PoseSample pose;
    pose.t = 0.117 * i + 0.003;
    pose.position = {0.5 * i, 0.01, 0.2};
    pose.attitude = {0.0, 0.03, 0.001 * i};
    s.poses.push_back(pose);
  }
  CloudFrame frame;
  frame.t = 0.05;
  frame.points.push_back({{0.4, 0.1, -0.19}, {120.0, 110.5, 90.25}});
  frame.points.push_back({{0.5, -0.1, -0.21}, {130.0, 100.0, 80.0}});
  s.frames.push_back(frame);
  return s;
}

}  // namespace

TEST_CASE("log export and ingest round-trip all numeric fields exactly") {
  testutil::TempDir dir;
  const auto log = dir / "run.jsonl";
  const SensorSeries original = sample_series();
  export_log_file(original, log);

  const SensorSeries back = ingest_log_file(log);
  REQUIRE(back.imu.size() == original.imu.size());
  REQUIRE(back.encoders.size() == original.encoders.size());
  REQUIRE(back.currents.size() == original.currents.size());
  REQUIRE(back.poses.size() == original.poses.size());
  REQUIRE(back.frames.size() == original.frames.size());

  for (std::size_t i = 0; i < original.imu.size(); ++i) {
    CHECK(back.imu[i].t == original.imu[i].t);
    CHECK(exact_eq(back.imu[i].accel, original.imu[i].accel));
    CHECK(back.imu[i].attitude.roll == original.imu[i].attitude.roll);
    CHECK(back.imu[i].attitude.yaw == original.imu[i].attitude.yaw);
  }
  for (std::size_t i = 0; i < original.encoders.size(); ++i) {
    CHECK(back.encoders[i].omega == original.encoders[i].omega);
  }
  for (std::size_t i = 0; i < original.poses.size(); ++i) {
    CHECK(exact_eq(back.poses[i].position, original.poses[i].position));
    CHECK(back.poses[i].attitude.pitch == original.poses[i].attitude.pitch);
  }
  REQUIRE(back.frames[0].points.size() == 2);
  CHECK(exact_eq(back.frames[0].points[0].position,
                 original.frames[0].points[0].position));
  CHECK(back.frames[0].points[0].rgb == original.frames[0].points[0].rgb);
  CHECK(back.frames[0].points[1].rgb[2] == 80.0);
}

TEST_CASE("export writes point clouds as sidecar files and is byte-stable") {
  testutil::TempDir dir;
  const auto log = dir / "run.jsonl";
  export_log_file(sample_series(), log);
  CHECK(std::filesystem::exists(log));

  // The cloud reference in the log resolves to an existing CSV.
  const SensorSeries back = ingest_log_file(log);
  REQUIRE_FALSE(back.frames[0].file.empty());
  CHECK(std::filesystem::exists(dir.path() / back.frames[0].file));

  const std::string first = testutil::read_file(log);
  export_log_file(sample_series(), log);
  CHECK(testutil::read_file(log) == first);
  // No temporary files left behind by the atomic write.
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("ingest rejects out-of-order timestamps with the line number") {
  std::istringstream in(
      "{\"t\":1.0,\"kind\":\"imu\",\"ax\":0,\"ay\":0,\"az\":-9.81,"
      "\"roll\":0,\"pitch\":0,\"yaw\":0}\n"
      "{\"t\":0.5,\"kind\":\"imu\",\"ax\":0,\"ay\":0,\"az\":-9.81,"
      "\"roll\":0,\"pitch\":0,\"yaw\":0}\n");
  try {
    ingest_log(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("interleaved streams may overlap in time") {
  std::istringstream in(
      "{\"t\":1.0,\"kind\":\"imu\",\"ax\":0,\"ay\":0,\"az\":-9.81,"
      "\"roll\":0,\"pitch\":0,\"yaw\":0}\n"
      "{\"t\":0.5,\"kind\":\"enc\",\"w1\":3,\"w2\":3,\"w3\":3,\"w4\":3}\n");
  const SensorSeries s = ingest_log(in);
  CHECK(s.imu.size() == 1);
  CHECK(s.encoders.size() == 1);
}

TEST_CASE("ingest reports malformed records") {
  SUBCASE("invalid JSON") {
    std::istringstream in("this is not json\n");
    CHECK_THROWS_AS(ingest_log(in), ParseError);
  }
  SUBCASE("unknown kind") {
    std::istringstream in("{\"t\":0.0,\"kind\":\"sonar\",\"v\":1}\n");
    CHECK_THROWS_AS(ingest_log(in), ParseError);
  }
  SUBCASE("missing field") {
    std::istringstream in(
        "{\"t\":0.0,\"kind\":\"cur\",\"il\":0.5}\n");
    CHECK_THROWS_AS(ingest_log(in), ParseError);
  }
  SUBCASE("non-numeric field") {
    std::istringstream in(
        "{\"t\":0.0,\"kind\":\"cur\",\"il\":\"x\",\"ir\":0.1}\n");
    CHECK_THROWS_AS(ingest_log(in), ParseError);
  }
  SUBCASE("empty log") {
    std::istringstream in("\n\n");
    CHECK_THROWS_AS(ingest_log(in), EmptySeriesError);
  }
  SUBCASE("missing cloud sidecar") {
    std::istringstream in(
        "{\"t\":0.0,\"kind\":\"cloud\",\"file\":\"nope/missing.csv\"}\n");
    CHECK_THROWS_AS(ingest_log(in, "/definitely/not/here"), ParseError);
  }
}

TEST_CASE("angles may be given in degrees") {
  std::istringstream in(
      "{\"t\":0.0,\"kind\":\"pose\",\"x\":0,\"y\":0,\"z\":0,"
      "\"roll\":0,\"pitch\":90,\"yaw\":180,\"angle_unit\":\"deg\"}\n");
  const SensorSeries s = ingest_log(in);
  CHECK(s.poses[0].attitude.pitch == doctest::Approx(1.5707963267948966));
  CHECK(s.poses[0].attitude.yaw == doctest::Approx(3.141592653589793));
}

TEST_CASE("cloud CSV round-trips full precision") {
  testutil::TempDir dir;
  const auto csv = dir / "cloud.csv";
  std::vector<ColoredPoint> pts;
  pts.push_back({{0.123456789012345678, -1e-17, 3.5}, {254.999, 0.001, 127.5}});
  write_cloud_csv(pts, csv);
  const auto back = read_cloud_csv(csv);
  REQUIRE(back.size() == 1);
  CHECK(exact_eq(back[0].position, pts[0].position));
  CHECK(back[0].rgb == pts[0].rgb);

  std::ofstream(csv, std::ios::app) << "1,2,3\n";
  CHECK_THROWS_AS(read_cloud_csv(csv), ParseError);
  CHECK_THROWS_AS(read_cloud_csv(dir / "absent.csv"), IoError);
}

TEST_CASE("atomic text write leaves no temporary and stores the payload") {
  testutil::TempDir dir;
  const auto file = dir / "artifact.json";
  write_text_atomic("{\"a\":1}\n", file);
  CHECK(testutil::read_file(file) == "{\"a\":1}\n");
  write_text_atomic("{\"a\":2}\n", file);
  CHECK(testutil::read_file(file) == "{\"a\":2}\n");
  std::size_t entries = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
}

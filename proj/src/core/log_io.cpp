#include "terrasense/core/log_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "terrasense/core/errors.hpp"

namespace terrasense {
namespace {

using nlohmann::json;

constexpr double kDegToRad = M_PI / 180.0;

double require_number(const json& rec, const char* key, int line) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_number()) {
    throw ParseError(line, std::string("missing or non-numeric field '") + key + "'");
  }
  return it->get<double>();
}

// Angles default to radians; a record may carry "angle_unit": "deg".
double angle_scale(const json& rec, int line) {
  auto it = rec.find("angle_unit");
  if (it == rec.end()) return 1.0;
  if (!it->is_string()) throw ParseError(line, "angle_unit must be a string");
  const std::string unit = it->get<std::string>();
  if (unit == "rad") return 1.0;
  if (unit == "deg") return kDegToRad;
  throw ParseError(line, "angle_unit must be 'rad' or 'deg'");
}

void check_order(double prev, double t, const char* stream, int line) {
  if (!(t > prev)) {
    throw ParseError(line, std::string("non-increasing timestamp in '") +
                               stream + "' stream");
  }
}

}  // namespace

std::vector<ColoredPoint> read_cloud_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open point-cloud file '" + path.string() + "'");
  }
  std::vector<ColoredPoint> points;
  std::string row;
  int csv_line = 0;
  while (std::getline(in, row)) {
    ++csv_line;
    if (row.empty()) continue;
    ColoredPoint p;
    double x, y, z, r, g, b;
    if (std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &x, &y, &z, &r, &g,
                    &b) != 6) {
      throw ParseError(csv_line, "malformed point row in '" + path.string() + "'");
    }
    p.position = {x, y, z};
    p.rgb = {r, g, b};
    points.push_back(p);
  }
  return points;
}

void write_cloud_csv(const std::vector<ColoredPoint>& points,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  char buf[256];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  p.position.x(), p.position.y(), p.position.z(), p.rgb[0],
                  p.rgb[1], p.rgb[2]);
    out << buf;
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

SensorSeries ingest_log(std::istream& source,
                        const std::filesystem::path& base_dir,
                        LogFormat format) {
  if (format != LogFormat::Jsonl) {
    throw InvalidArgumentError("unsupported log format");
  }
  SensorSeries series;
  std::string line;
  int line_no = 0;
  double last_t[5] = {-std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()};

  while (std::getline(source, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw ParseError(line_no, "invalid JSON record");
    }
    const double t = require_number(rec, "t", line_no);
    if (!std::isfinite(t)) throw ParseError(line_no, "non-finite timestamp");
    auto kind_it = rec.find("kind");
    if (kind_it == rec.end() || !kind_it->is_string()) {
      throw ParseError(line_no, "missing 'kind'");
    }
    const std::string kind = kind_it->get<std::string>();

    if (kind == "imu") {
      check_order(last_t[0], t, "imu", line_no);
      last_t[0] = t;
      const double s = angle_scale(rec, line_no);
      ImuSample imu;
      imu.t = t;
      imu.accel = {require_number(rec, "ax", line_no),
                   require_number(rec, "ay", line_no),
                   require_number(rec, "az", line_no)};
      imu.attitude = {require_number(rec, "roll", line_no) * s,
                      require_number(rec, "pitch", line_no) * s,
                      require_number(rec, "yaw", line_no) * s};
      series.imu.push_back(imu);
    } else if (kind == "enc") {
      check_order(last_t[1], t, "enc", line_no);
      last_t[1] = t;
      EncoderSample enc;
      enc.t = t;
      enc.omega = {require_number(rec, "w1", line_no),
                   require_number(rec, "w2", line_no),
                   require_number(rec, "w3", line_no),
                   require_number(rec, "w4", line_no)};
      series.encoders.push_back(enc);
    } else if (kind == "cur") {
      check_order(last_t[2], t, "cur", line_no);
      last_t[2] = t;
      series.currents.push_back(
          {t, require_number(rec, "il", line_no),
           require_number(rec, "ir", line_no)});
    } else if (kind == "pose") {
      check_order(last_t[3], t, "pose", line_no);
      last_t[3] = t;
      const double s = angle_scale(rec, line_no);
      PoseSample pose;
      pose.t = t;
      pose.position = {require_number(rec, "x", line_no),
                       require_number(rec, "y", line_no),
                       require_number(rec, "z", line_no)};
      pose.attitude = {require_number(rec, "roll", line_no) * s,
                       require_number(rec, "pitch", line_no) * s,
                       require_number(rec, "yaw", line_no) * s};
      series.poses.push_back(pose);
    } else if (kind == "cloud") {
      check_order(last_t[4], t, "cloud", line_no);
      last_t[4] = t;
      auto file_it = rec.find("file");
      if (file_it == rec.end() || !file_it->is_string()) {
        throw ParseError(line_no, "cloud record without 'file'");
      }
      CloudFrame frame;
      frame.t = t;
      frame.file = file_it->get<std::string>();
      try {
        frame.points = read_cloud_csv(base_dir / frame.file);
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
      series.frames.push_back(std::move(frame));
    } else {
      throw ParseError(line_no, "unknown record kind '" + kind + "'");
    }
  }

  if (series.empty()) {
    throw EmptySeriesError("log contains no records");
  }
  return series;
}

SensorSeries ingest_log_file(const std::filesystem::path& path,
                             LogFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open log '" + path.string() + "'");
  return ingest_log(in, path.has_parent_path() ? path.parent_path() : ".",
                    format);
}

void export_log(const SensorSeries& series, std::ostream& out,
                const std::filesystem::path& base_dir,
                const std::string& cloud_dir) {
  struct Entry {
    double t;
    int order;  // tie-break: imu, enc, cur, pose, cloud
    json rec;
  };
  std::vector<Entry> entries;
  entries.reserve(series.imu.size() + series.encoders.size() +
                  series.currents.size() + series.poses.size() +
                  series.frames.size());

  for (const auto& s : series.imu) {
    entries.push_back({s.t, 0,
                       {{"t", s.t},
                        {"kind", "imu"},
                        {"ax", s.accel.x()},
                        {"ay", s.accel.y()},
                        {"az", s.accel.z()},
                        {"roll", s.attitude.roll},
                        {"pitch", s.attitude.pitch},
                        {"yaw", s.attitude.yaw}}});
  }
  for (const auto& s : series.encoders) {
    entries.push_back({s.t, 1,
                       {{"t", s.t},
                        {"kind", "enc"},
                        {"w1", s.omega[0]},
                        {"w2", s.omega[1]},
                        {"w3", s.omega[2]},
                        {"w4", s.omega[3]}}});
  }
  for (const auto& s : series.currents) {
    entries.push_back(
        {s.t, 2, {{"t", s.t}, {"kind", "cur"}, {"il", s.left}, {"ir", s.right}}});
  }
  for (const auto& s : series.poses) {
    entries.push_back({s.t, 3,
                       {{"t", s.t},
                        {"kind", "pose"},
                        {"x", s.position.x()},
                        {"y", s.position.y()},
                        {"z", s.position.z()},
                        {"roll", s.attitude.roll},
                        {"pitch", s.attitude.pitch},
                        {"yaw", s.attitude.yaw}}});
  }

  if (!series.frames.empty()) {
    std::filesystem::create_directories(base_dir / cloud_dir);
  }
  int frame_idx = 0;
  for (const auto& f : series.frames) {
    char name[64];
    std::snprintf(name, sizeof(name), "frame_%06d.csv", frame_idx++);
    const std::string rel = cloud_dir + "/" + name;
    write_cloud_csv(f.points, base_dir / rel);
    entries.push_back({f.t, 4, {{"t", f.t}, {"kind", "cloud"}, {"file", rel}}});
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) {
                     if (a.t != b.t) return a.t < b.t;
                     return a.order < b.order;
                   });
  for (const auto& e : entries) {
    out << e.rec.dump() << "\n";
  }
}

void export_log_file(const SensorSeries& series,
                     const std::filesystem::path& path) {
  const auto base = path.has_parent_path() ? path.parent_path()
                                           : std::filesystem::path(".");
  std::ostringstream out;
  export_log(series, out, base, path.stem().string() + "_clouds");
  write_text_atomic(out.str(), path);
}

void write_text_atomic(const std::string& text,
                       const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                  "': " + ec.message());
  }
}

}  // namespace terrasense

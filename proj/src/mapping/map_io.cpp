#include "terrasense/mapping/map_io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/log_io.hpp"

namespace terrasense {
namespace {

using nlohmann::json;

constexpr int kMapVersion = 1;

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d parse_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(0, "expected a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json class_or_null(const std::optional<TerrainClass>& c) {
  if (!c) return nullptr;
  return to_string(*c);
}

std::optional<TerrainClass> parse_class(const json& j) {
  if (j.is_null()) return std::nullopt;
  return terrain_class_from_string(j.get<std::string>());
}

}  // namespace

void export_map(const MultimodalMap& map, const std::filesystem::path& file) {
  const auto base =
      file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
  const std::string cloud_dir = file.stem().string() + "_patches";
  if (!map.patches.empty()) {
    std::filesystem::create_directories(base / cloud_dir);
  }

  json root;
  root["format"] = "terrasense-map";
  root["version"] = kMapVersion;
  json path_arr = json::array();
  for (const auto& p : map.path) path_arr.push_back(vec3(p));
  root["path"] = std::move(path_arr);

  json patches = json::array();
  int idx = 0;
  for (const TerrainPatch& patch : map.patches) {
    char name[64];
    std::snprintf(name, sizeof(name), "patch_%06d.csv", idx++);
    const std::string rel = cloud_dir + "/" + name;
    write_cloud_csv(patch.points, base / rel);

    json rec;
    rec["cloud"] = rel;
    rec["observed_t"] = patch.observed_t;
    rec["first_pose_index"] = patch.first_pose_index;
    rec["last_pose_index"] = patch.last_pose_index;
    rec["centroid"] = vec3(patch.centroid);
    rec["min_corner"] = vec3(patch.min_corner);
    rec["max_corner"] = vec3(patch.max_corner);
    if (patch.traversal) {
      rec["traversal"] = {{"start", patch.traversal->start},
                          {"end", patch.traversal->end}};
    } else {
      rec["traversal"] = nullptr;
    }

    json features;
    if (patch.color) {
      features["color"] = patch.color->flat();
    } else {
      features["color"] = nullptr;
    }
    if (patch.geometric) {
      features["geometric"] = patch.geometric->flat();
    } else {
      features["geometric"] = nullptr;
    }
    if (patch.contact) {
      features["contact"] = {{"values", patch.contact->flat()},
                             {"slip_flagged", patch.contact->slip_flagged}};
    } else {
      features["contact"] = nullptr;
    }
    rec["features"] = std::move(features);
    rec["label"] = class_or_null(patch.label);
    rec["predicted"] = class_or_null(patch.predicted);
    patches.push_back(std::move(rec));
  }
  root["patches"] = std::move(patches);
  write_text_atomic(root.dump(2) + "\n", file);
}

MultimodalMap import_map(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open map '" + file.string() + "'");
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ParseError(0, "map file is not a JSON object");
  }
  if (root.value("format", std::string()) != "terrasense-map") {
    throw ParseError(0, "not a terrasense map file");
  }
  if (root.value("version", -1) != kMapVersion) {
    throw ParseError(0, "unsupported map version");
  }
  const auto base =
      file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");

  MultimodalMap map;
  try {
  for (const json& p : root.value("path", json::array())) {
    map.path.push_back(parse_vec3(p));
  }
  for (const json& rec : root.value("patches", json::array())) {
    TerrainPatch patch;
    patch.points = read_cloud_csv(base / rec.at("cloud").get<std::string>());
    patch.observed_t = rec.at("observed_t").get<double>();
    patch.first_pose_index = rec.at("first_pose_index").get<int>();
    patch.last_pose_index = rec.at("last_pose_index").get<int>();
    patch.centroid = parse_vec3(rec.at("centroid"));
    patch.min_corner = parse_vec3(rec.at("min_corner"));
    patch.max_corner = parse_vec3(rec.at("max_corner"));
    if (!rec.at("traversal").is_null()) {
      patch.traversal = TimeWindow{rec["traversal"].at("start").get<double>(),
                                   rec["traversal"].at("end").get<double>()};
    }
    const json& features = rec.at("features");
    if (!features.at("color").is_null()) {
      const auto flat = features["color"].get<std::array<double, 12>>();
      ColorFeatures c;
      for (int ch = 0; ch < 3; ++ch) {
        c.channels[ch] = {flat[4 * ch + 0], flat[4 * ch + 1], flat[4 * ch + 2],
                          flat[4 * ch + 3]};
      }
      patch.color = c;
    }
    if (!features.at("geometric").is_null()) {
      const auto flat = features["geometric"].get<std::array<double, 4>>();
      patch.geometric =
          GeometricFeatures{flat[0], flat[1], flat[2], flat[3]};
    }
    if (!features.at("contact").is_null()) {
      const auto flat =
          features["contact"].at("values").get<std::array<double, 4>>();
      ContactFeatures c;
      c.motion_resistance = flat[0];
      c.slip = flat[1];
      c.accel_rms = flat[2];
      c.accel_std = flat[3];
      c.slip_flagged = features["contact"].at("slip_flagged").get<bool>();
      patch.contact = c;
    }
    patch.label = parse_class(rec.at("label"));
    patch.predicted = parse_class(rec.at("predicted"));
    map.patches.push_back(std::move(patch));
  }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed map record: ") + e.what());
  }
  return map;
}

}  // namespace terrasense

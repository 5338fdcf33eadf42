#include "terrasense/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/log_io.hpp"

namespace terrasense {
namespace {

using nlohmann::json;

constexpr int kFeatureVersion = 1;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

json sample_to_json(const PatchSample& sample) {
  json rec;
  rec["label"] = sample.label ? json(to_string(*sample.label)) : json(nullptr);
  rec["color"] = sample.color ? json(sample.color->flat()) : json(nullptr);
  rec["geometric"] =
      sample.geometric ? json(sample.geometric->flat()) : json(nullptr);
  if (sample.contact) {
    rec["contact"] = {{"values", sample.contact->flat()},
                      {"slip_flagged", sample.contact->slip_flagged}};
  } else {
    rec["contact"] = nullptr;
  }
  return rec;
}

PatchSample sample_from_json(const json& rec) {
  PatchSample sample;
  if (!rec.at("label").is_null()) {
    sample.label = terrain_class_from_string(rec["label"].get<std::string>());
  }
  if (!rec.at("color").is_null()) {
    const auto flat = rec["color"].get<std::array<double, 12>>();
    ColorFeatures c;
    for (int ch = 0; ch < 3; ++ch) {
      c.channels[ch] = {flat[4 * ch + 0], flat[4 * ch + 1], flat[4 * ch + 2],
                        flat[4 * ch + 3]};
    }
    sample.color = c;
  }
  if (!rec.at("geometric").is_null()) {
    const auto flat = rec["geometric"].get<std::array<double, 4>>();
    sample.geometric = GeometricFeatures{flat[0], flat[1], flat[2], flat[3]};
  }
  if (!rec.at("contact").is_null()) {
    const auto flat = rec["contact"].at("values").get<std::array<double, 4>>();
    ContactFeatures c;
    c.motion_resistance = flat[0];
    c.slip = flat[1];
    c.accel_rms = flat[2];
    c.accel_std = flat[3];
    c.slip_flagged = rec["contact"].at("slip_flagged").get<bool>();
    sample.contact = c;
  }
  return sample;
}

}  // namespace

VehicleParams load_vehicle_params(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open parameter file " + file.string());
  VehicleParams params;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    const std::string key = trim(text.substr(0, eq));
    double value = 0.0;
    try {
      value = std::stod(trim(text.substr(eq + 1)));
    } catch (const std::exception&) {
      throw ParseError(line_no, "invalid numeric value for '" + key + "'");
    }
    if (key == "width") {
      params.width = value;
    } else if (key == "length") {
      params.length = value;
    } else if (key == "weight") {
      params.weight = value;
    } else if (key == "cg_height") {
      params.cg_height = value;
    } else if (key == "wheel_radius") {
      params.wheel_radius = value;
    } else if (key == "torque_constant") {
      params.torque_constant = value;
    } else if (key == "gear_ratio") {
      params.gear_ratio = value;
    } else if (key == "sprung_mass") {
      params.sprung_mass = value;
    } else if (key == "wheel_stiffness") {
      params.wheel_stiffness = value;
    } else if (key == "wheel_damping") {
      params.wheel_damping = value;
    } else {
      throw ParseError(line_no, "unknown vehicle parameter '" + key + "'");
    }
  }
  params.validate();
  return params;
}

void save_vehicle_params(const VehicleParams& params,
                         const std::filesystem::path& file) {
  params.validate();
  char buf[64];
  std::string out;
  const auto field = [&](const char* key, double value) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, value);
    out += buf;
  };
  field("width", params.width);
  field("length", params.length);
  field("weight", params.weight);
  field("cg_height", params.cg_height);
  field("wheel_radius", params.wheel_radius);
  field("torque_constant", params.torque_constant);
  field("gear_ratio", params.gear_ratio);
  field("sprung_mass", params.sprung_mass);
  field("wheel_stiffness", params.wheel_stiffness);
  field("wheel_damping", params.wheel_damping);
  write_text_atomic(out, file);
}

void run_simulate(const SimulateJob& job, const std::filesystem::path& log_path) {
  const SynthRun run = synth_run_segments(job.segments, job.speed, job.seed,
                                          job.params, job.options);
  if (log_path.has_parent_path()) {
    std::filesystem::create_directories(log_path.parent_path());
  }
  export_log_file(run.series, log_path);
}

std::vector<PatchSample> extract_from_log(
    const std::filesystem::path& log_path, const VehicleParams& params,
    std::optional<TerrainClass> label, const ExtractConfig& config) {
  const SensorSeries series = ingest_log_file(log_path);
  StitchResult stitched =
      stitch_patches(series.frames, series.poses, config.segmentation);

  std::vector<PatchSample> samples;
  samples.reserve(stitched.patches.size());
  for (TerrainPatch& patch : stitched.patches) {
    const PatchStatus status =
        associate_features(patch, series, params, config.association);
    if (status == PatchStatus::Pending && !config.include_pending) continue;
    PatchSample sample;
    sample.label = label;
    sample.color = patch.color;
    sample.geometric = patch.geometric;
    sample.contact = patch.contact;
    samples.push_back(sample);
  }
  return samples;
}

void write_features(const std::vector<PatchSample>& samples,
                    const std::filesystem::path& file) {
  json root;
  root["format"] = "terrasense-features";
  root["version"] = kFeatureVersion;
  json list = json::array();
  for (const PatchSample& sample : samples) {
    list.push_back(sample_to_json(sample));
  }
  root["samples"] = std::move(list);
  write_text_atomic(root.dump(2) + "\n", file);
}

std::vector<PatchSample> read_features(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open feature file " + file.string());
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ParseError(0, "feature file is not a JSON object");
  }
  if (root.value("format", std::string()) != "terrasense-features") {
    throw ParseError(0, "not a terrasense feature file");
  }
  if (root.value("version", -1) != kFeatureVersion) {
    throw ParseError(0, "unsupported feature file version");
  }
  std::vector<PatchSample> samples;
  try {
    for (const json& rec : root.at("samples")) {
      samples.push_back(sample_from_json(rec));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed feature record: ") + e.what());
  }
  return samples;
}

std::vector<PatchSample> read_features_merged(
    std::span<const std::filesystem::path> files) {
  std::vector<PatchSample> merged;
  for (const auto& file : files) {
    std::vector<PatchSample> part = read_features(file);
    merged.insert(merged.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  return merged;
}

TrainResult run_train(const std::vector<PatchSample>& samples,
                      const FeatureMask& mask, double penalty, int folds,
                      std::uint64_t seed) {
  const LabeledDataset data = build_dataset(samples, mask);
  TrainResult result;
  result.cv = kfold_cv(data, folds, penalty, seed);
  result.model = train_ecoc(data, penalty, seed);
  return result;
}

EvaluationReport run_evaluate(const EcocModel& model,
                              const std::vector<PatchSample>& samples) {
  const LabeledDataset data = build_dataset(samples, model.mask);
  return evaluate(model, data);
}

MultimodalMap classify_log(const EcocModel& model,
                           const std::filesystem::path& log_path,
                           const VehicleParams& params,
                           const ExtractConfig& config) {
  const SensorSeries series = ingest_log_file(log_path);
  StitchResult stitched =
      stitch_patches(series.frames, series.poses, config.segmentation);

  MultimodalMap map;
  map.path.reserve(series.poses.size());
  for (const PoseSample& pose : series.poses) {
    map.path.push_back(pose.position);
  }

  const Eigen::Vector3d last_position =
      series.poses.empty() ? Eigen::Vector3d::Zero()
                           : series.poses.back().position;

  for (TerrainPatch& patch : stitched.patches) {
    const PatchStatus status =
        associate_features(patch, series, params, config.association);
    if (status == PatchStatus::Pending &&
        (last_position - patch.centroid).norm() >
            config.association.pending_horizon) {
      continue;  // abandoned: the vehicle moved on without traversing it
    }
    PatchSample sample;
    sample.color = patch.color;
    sample.geometric = patch.geometric;
    sample.contact = patch.contact;
    const bool scorable = (!model.mask.color || sample.color) &&
                          (!model.mask.geometric || sample.geometric) &&
                          (!model.mask.contact || sample.contact);
    if (scorable) {
      patch.predicted = model.predict(feature_row(sample, model.mask));
    }
    map.patches.push_back(std::move(patch));
  }
  return map;
}

}  // namespace terrasense

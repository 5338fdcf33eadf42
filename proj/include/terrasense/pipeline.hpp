#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "terrasense/classify/dataset.hpp"
#include "terrasense/classify/ecoc.hpp"
#include "terrasense/classify/metrics.hpp"
#include "terrasense/core/types.hpp"
#include "terrasense/mapping/association.hpp"
#include "terrasense/mapping/patch.hpp"
#include "terrasense/mapping/segmentation.hpp"
#include "terrasense/sim/synth_run.hpp"

namespace terrasense {

/// Vehicle parameter files use the same `key = value` text format as
/// presets. Keys: width, length, weight, cg_height, wheel_radius,
/// torque_constant, gear_ratio, sprung_mass, wheel_stiffness, wheel_damping.
VehicleParams load_vehicle_params(const std::filesystem::path& file);
void save_vehicle_params(const VehicleParams& params,
                         const std::filesystem::path& file);

struct SimulateJob {
  std::vector<Segment> segments;
  double speed = 0.5;
  std::uint64_t seed = 1;
  VehicleParams params;
  SynthOptions options;
};

/// Generate a synthetic run and write it as a JSONL log (with point-cloud
/// sidecars next to it). The log itself is written atomically.
void run_simulate(const SimulateJob& job, const std::filesystem::path& log_path);

struct ExtractConfig {
  SegmentationConfig segmentation;
  AssociationConfig association;
  bool include_pending = false;  // keep patches without contact features
};

/// Ingest a log, stitch patches, attach per-patch features, and return one
/// sample per patch. `label` stamps every sample with the run's known
/// terrain (the usual supervised-collection protocol).
std::vector<PatchSample> extract_from_log(
    const std::filesystem::path& log_path, const VehicleParams& params,
    std::optional<TerrainClass> label = std::nullopt,
    const ExtractConfig& config = {});

/// JSON feature-set serialisation (atomic write; `read_features_merged`
/// concatenates several files, e.g. one per collection run).
void write_features(const std::vector<PatchSample>& samples,
                    const std::filesystem::path& file);
std::vector<PatchSample> read_features(const std::filesystem::path& file);
std::vector<PatchSample> read_features_merged(
    std::span<const std::filesystem::path> files);

struct TrainResult {
  EcocModel model;
  CrossValidation cv;
};

/// Cross-validate, then train the shipped model on the full dataset.
TrainResult run_train(const std::vector<PatchSample>& samples,
                      const FeatureMask& mask, double penalty, int folds,
                      std::uint64_t seed);

EvaluationReport run_evaluate(const EcocModel& model,
                              const std::vector<PatchSample>& samples);

/// Build a terrain map from a log: stitch, associate, predict every patch
/// with enough modalities for the model's mask. Pending patches further than
/// the association horizon behind the final pose are dropped.
MultimodalMap classify_log(const EcocModel& model,
                           const std::filesystem::path& log_path,
                           const VehicleParams& params,
                           const ExtractConfig& config = {});

}  // namespace terrasense

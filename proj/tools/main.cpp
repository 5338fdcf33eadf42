#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/log_io.hpp"
#include "terrasense/mapping/map_io.hpp"
#include "terrasense/pipeline.hpp"
#include "terrasense/sim/presets.hpp"

namespace {

using namespace terrasense;

const std::vector<std::string> kClassNames = {"ploughed", "unploughed",
                                              "dirt_road", "gravel"};

std::string validate_mask(const std::string& text) {
  try {
    parse_feature_mask(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

struct SimulateArgs {
  std::vector<std::string> classes;
  std::vector<double> durations;
  double speed = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  std::string params_file;
  std::vector<std::string> preset_files;
  double pitch_amplitude = 0.0;
  double pitch_period = 8.0;
};

struct ExtractArgs {
  std::string log;
  std::string out;
  std::string label;
  std::string params_file;
  bool include_pending = false;
};

struct TrainArgs {
  std::vector<std::string> features;
  std::string mask = "all";
  double penalty = 1.0;
  int folds = 5;
  std::uint64_t seed = 1;
  std::string out;
};

struct EvaluateArgs {
  std::vector<std::string> features;
  std::string model;
  std::string out;
};

struct ClassifyArgs {
  std::string log;
  std::string model;
  std::string out;
  std::string params_file;
};

VehicleParams params_or_default(const std::string& file) {
  if (file.empty()) return VehicleParams{};
  return load_vehicle_params(file);
}

int do_simulate(const SimulateArgs& args) {
  if (args.classes.size() != args.durations.size()) {
    std::cerr << "error: --class and --duration must be given the same number "
                 "of times\n";
    return 2;
  }
  SimulateJob job;
  job.speed = args.speed;
  job.seed = args.seed;
  job.params = params_or_default(args.params_file);
  job.options.pitch.amplitude = args.pitch_amplitude;
  job.options.pitch.period = args.pitch_period;
  for (const std::string& file : args.preset_files) {
    job.options.preset_overrides.push_back(load_preset(file));
  }
  for (std::size_t i = 0; i < args.classes.size(); ++i) {
    job.segments.push_back(
        {terrain_class_from_string(args.classes[i]), args.durations[i]});
  }
  run_simulate(job, args.out);
  std::printf("log written to %s\n", args.out.c_str());
  return 0;
}

int do_extract(const ExtractArgs& args) {
  std::optional<TerrainClass> label;
  if (!args.label.empty()) label = terrain_class_from_string(args.label);
  ExtractConfig config;
  config.include_pending = args.include_pending;
  const auto samples =
      extract_from_log(args.log, params_or_default(args.params_file), label,
                       config);
  write_features(samples, args.out);
  std::printf("%zu patch samples written to %s\n", samples.size(),
              args.out.c_str());
  return 0;
}

int do_train(const TrainArgs& args) {
  std::vector<std::filesystem::path> files(args.features.begin(),
                                           args.features.end());
  const auto samples = read_features_merged(files);
  const FeatureMask mask = parse_feature_mask(args.mask);
  const TrainResult result =
      run_train(samples, mask, args.penalty, args.folds, args.seed);
  save_model(result.model, args.out);
  std::printf("%d-fold cross-validation error: %.1f%% (%zu samples, mask %s)\n",
              args.folds, 100.0 * result.cv.mean_error, samples.size(),
              mask.name().c_str());
  std::printf("model written to %s\n", args.out.c_str());
  return 0;
}

int do_evaluate(const EvaluateArgs& args) {
  std::vector<std::filesystem::path> files(args.features.begin(),
                                           args.features.end());
  const auto samples = read_features_merged(files);
  const EcocModel model = load_model(args.model);
  const EvaluationReport report = run_evaluate(model, samples);
  std::fputs(report.to_table().c_str(), stdout);
  if (!args.out.empty()) {
    write_text_atomic(to_json_string(report) + "\n", args.out);
    std::printf("report written to %s\n", args.out.c_str());
  }
  return 0;
}

int do_classify(const ClassifyArgs& args) {
  const EcocModel model = load_model(args.model);
  const MultimodalMap map =
      classify_log(model, args.log, params_or_default(args.params_file));
  export_map(map, args.out);
  std::size_t predicted = 0;
  for (const TerrainPatch& patch : map.patches) {
    if (patch.predicted) ++predicted;
  }
  std::printf("map with %zu patches (%zu classified) written to %s\n",
              map.patches.size(), predicted, args.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "terrasense: multimodal terrain classification for skid-steer robots"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file");
  app.set_version_flag("--version", "terrasense 0.1.0");

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "generate a synthetic sensor log");
  simulate->add_option("--class", sim.classes, "terrain segment class")
      ->required()
      ->check(CLI::IsMember(kClassNames));
  simulate->add_option("--duration", sim.durations, "segment duration, s")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--speed", sim.speed, "vehicle speed, m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "random seed")
      ->capture_default_str();
  simulate->add_option("--out", sim.out, "output log path (JSONL)")->required();
  simulate->add_option("--params", sim.params_file, "vehicle parameter file");
  simulate->add_option("--preset", sim.preset_files,
                       "terrain preset file overriding the built-in values");
  simulate->add_option("--pitch-amplitude", sim.pitch_amplitude,
                       "sinusoidal pitch amplitude, rad")
      ->capture_default_str();
  simulate->add_option("--pitch-period", sim.pitch_period,
                       "pitch modulation period, s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ExtractArgs ext;
  CLI::App* extract =
      app.add_subcommand("extract", "extract per-patch features from a log");
  extract->add_option("--log", ext.log, "input log (JSONL)")->required();
  extract->add_option("--out", ext.out, "output feature file (JSON)")
      ->required();
  extract->add_option("--label", ext.label,
                      "known terrain class of the whole run")
      ->check(CLI::IsMember(kClassNames));
  extract->add_option("--params", ext.params_file, "vehicle parameter file");
  extract->add_flag("--include-pending", ext.include_pending,
                    "also keep patches that were never traversed");

  TrainArgs trn;
  CLI::App* train =
      app.add_subcommand("train", "train the terrain classifier");
  train->add_option("--features", trn.features, "feature file (repeatable)")
      ->required();
  train->add_option("--mask", trn.mask,
                    "feature families: color, geometric, contact, "
                    "combinations joined with '+', or all")
      ->check(validate_mask)
      ->capture_default_str();
  train->add_option("--penalty", trn.penalty, "SVM penalty C")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--folds", trn.folds, "cross-validation folds")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  train->add_option("--seed", trn.seed, "fold-assignment seed")
      ->capture_default_str();
  train->add_option("--out", trn.out, "output model path (JSON)")->required();

  EvaluateArgs eva;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a feature set with a model");
  evaluate->add_option("--features", eva.features, "feature file (repeatable)")
      ->required();
  evaluate->add_option("--model", eva.model, "model file")->required();
  evaluate->add_option("--out", eva.out, "also write the report as JSON");

  ClassifyArgs cls;
  CLI::App* classify =
      app.add_subcommand("classify", "build a classified terrain map");
  classify->add_option("--log", cls.log, "input log (JSONL)")->required();
  classify->add_option("--model", cls.model, "model file")->required();
  classify->add_option("--out", cls.out, "output map path (JSON)")->required();
  classify->add_option("--params", cls.params_file, "vehicle parameter file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return do_simulate(sim);
    if (extract->parsed()) return do_extract(ext);
    if (train->parsed()) return do_train(trn);
    if (evaluate->parsed()) return do_evaluate(eva);
    if (classify->parsed()) return do_classify(cls);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

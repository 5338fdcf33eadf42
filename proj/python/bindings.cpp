#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "terrasense/classify/metrics.hpp"
#include "terrasense/core/errors.hpp"
#include "terrasense/core/log_io.hpp"
#include "terrasense/features/color.hpp"
#include "terrasense/features/contact.hpp"
#include "terrasense/features/geometric.hpp"
#include "terrasense/mapping/map_io.hpp"
#include "terrasense/pipeline.hpp"
#include "terrasense/sim/quarter_vehicle.hpp"

namespace py = pybind11;
using namespace terrasense;

namespace {

std::vector<ColoredPoint> to_points(const Eigen::MatrixXd& positions,
                                    const Eigen::MatrixXd& colors) {
  if (positions.cols() != 3 || colors.cols() != 3 ||
      positions.rows() != colors.rows()) {
    throw InvalidArgumentError("expected matching (n, 3) position and colour arrays");
  }
  std::vector<ColoredPoint> points(static_cast<std::size_t>(positions.rows()));
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    points[static_cast<std::size_t>(i)].position = positions.row(i).transpose();
    points[static_cast<std::size_t>(i)].rgb = {colors(i, 0), colors(i, 1),
                                               colors(i, 2)};
  }
  return points;
}

std::optional<TerrainClass> optional_class(const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  return terrain_class_from_string(*name);
}

}  // namespace

PYBIND11_MODULE(_terrasense, m) {
  m.doc() = "Multimodal terrain sensing: feature extraction, classification, "
            "simulation and mapping";

  py::register_exception<InvalidArgumentError>(m, "InvalidArgument",
                                               PyExc_ValueError);

  py::class_<VehicleParams>(m, "VehicleParams")
      .def(py::init<>())
      .def_readwrite("width", &VehicleParams::width)
      .def_readwrite("length", &VehicleParams::length)
      .def_readwrite("weight", &VehicleParams::weight)
      .def_readwrite("cg_height", &VehicleParams::cg_height)
      .def_readwrite("wheel_radius", &VehicleParams::wheel_radius)
      .def_readwrite("torque_constant", &VehicleParams::torque_constant)
      .def_readwrite("gear_ratio", &VehicleParams::gear_ratio)
      .def_readwrite("sprung_mass", &VehicleParams::sprung_mass)
      .def_readwrite("wheel_stiffness", &VehicleParams::wheel_stiffness)
      .def_readwrite("wheel_damping", &VehicleParams::wheel_damping)
      .def("natural_frequency_hz", &VehicleParams::natural_frequency_hz);

  m.def(
      "rgb_to_c1c2c3",
      [](double r, double g, double b) {
        const auto c = rgb_to_c1c2c3(r, g, b);
        return py::make_tuple(c[0], c[1], c[2]);
      },
      py::arg("r"), py::arg("g"), py::arg("b"),
      "Illumination-robust chromaticity angles of one RGB sample");

  m.def(
      "color_features",
      [](const Eigen::MatrixXd& colors) {
        Eigen::MatrixXd positions = Eigen::MatrixXd::Zero(colors.rows(), 3);
        const auto points = to_points(positions, colors);
        const auto flat = color_feature_vector(points).flat();
        return Eigen::Map<const Eigen::VectorXd>(flat.data(), flat.size())
            .eval();
      },
      py::arg("colors"),
      "12 colour moments (mean/var/3rd/4th per chromaticity channel) of an "
      "(n, 3) RGB array");

  m.def(
      "geometric_features",
      [](const Eigen::MatrixXd& positions) {
        Eigen::MatrixXd colors = Eigen::MatrixXd::Zero(positions.rows(), 3);
        const auto points = to_points(positions, colors);
        const auto flat = geometric_feature_vector(points).flat();
        return Eigen::Map<const Eigen::VectorXd>(flat.data(), flat.size())
            .eval();
      },
      py::arg("positions"),
      "(slope, fit residual, height variance, height range) of an (n, 3) "
      "point array");

  m.def(
      "wheel_loads",
      [](double roll, double pitch, const VehicleParams& params) {
        const WheelLoads loads = wheel_loads(params, {roll, pitch, 0.0});
        return py::make_tuple(loads.fz[0], loads.fz[1], loads.fz[2],
                              loads.fz[3]);
      },
      py::arg("roll"), py::arg("pitch"), py::arg("params") = VehicleParams{},
      "Quasi-static wheel loads (front-left, rear-left, front-right, "
      "rear-right), N");

  m.def(
      "motion_resistance",
      [](double current, double vertical_load, const VehicleParams& params) {
        return motion_resistance(current, vertical_load, params);
      },
      py::arg("current"), py::arg("vertical_load"),
      py::arg("params") = VehicleParams{});

  m.def(
      "slip",
      [](double actual_speed, double wheel_omega, double wheel_radius) {
        const SlipEstimate s = slip(actual_speed, wheel_omega, wheel_radius);
        return py::make_tuple(s.value, s.out_of_range);
      },
      py::arg("actual_speed"), py::arg("wheel_omega"), py::arg("wheel_radius"),
      "(slip value, out-of-range flag)");

  m.def("excitation_frequency", &excitation_frequency, py::arg("speed"),
        py::arg("wavelength"));
  m.def(
      "transfer_magnitude",
      [](double omega_e, const VehicleParams& params) {
        return transfer_magnitude(omega_e, params);
      },
      py::arg("omega_e"), py::arg("params") = VehicleParams{});

  m.def(
      "simulate_log",
      [](const std::filesystem::path& log_path,
         const std::vector<std::string>& classes,
         const std::vector<double>& durations, double speed,
         std::uint64_t seed, double pitch_amplitude, double pitch_period,
         const VehicleParams& params) {
        if (classes.size() != durations.size()) {
          throw InvalidArgumentError(
              "classes and durations must have the same length");
        }
        SimulateJob job;
        job.speed = speed;
        job.seed = seed;
        job.params = params;
        job.options.pitch.amplitude = pitch_amplitude;
        job.options.pitch.period = pitch_period;
        for (std::size_t i = 0; i < classes.size(); ++i) {
          job.segments.push_back(
              {terrain_class_from_string(classes[i]), durations[i]});
        }
        run_simulate(job, log_path);
      },
      py::arg("log_path"), py::arg("classes"), py::arg("durations"),
      py::arg("speed") = 0.5, py::arg("seed") = 1,
      py::arg("pitch_amplitude") = 0.0, py::arg("pitch_period") = 8.0,
      py::arg("params") = VehicleParams{},
      "Write a synthetic sensor log (JSONL plus point-cloud sidecars)");

  m.def(
      "extract_features",
      [](const std::filesystem::path& log_path,
         const std::filesystem::path& features_path,
         const std::optional<std::string>& label,
         const VehicleParams& params) {
        const auto samples =
            extract_from_log(log_path, params, optional_class(label));
        write_features(samples, features_path);
        return samples.size();
      },
      py::arg("log_path"), py::arg("features_path"),
      py::arg("label") = std::nullopt, py::arg("params") = VehicleParams{},
      "Extract per-patch features from a log; returns the sample count");

  m.def(
      "train_model",
      [](const std::vector<std::filesystem::path>& feature_paths,
         const std::filesystem::path& model_path, const std::string& mask,
         double penalty, int folds, std::uint64_t seed) {
        const auto samples = read_features_merged(feature_paths);
        const TrainResult result = run_train(
            samples, parse_feature_mask(mask), penalty, folds, seed);
        save_model(result.model, model_path);
        return result.cv.mean_error;
      },
      py::arg("feature_paths"), py::arg("model_path"), py::arg("mask") = "all",
      py::arg("penalty") = 1.0, py::arg("folds") = 5, py::arg("seed") = 1,
      "Cross-validate and train; writes the model and returns the CV error "
      "fraction");

  m.def(
      "evaluate_model",
      [](const std::filesystem::path& model_path,
         const std::vector<std::filesystem::path>& feature_paths) {
        const EcocModel model = load_model(model_path);
        const auto samples = read_features_merged(feature_paths);
        return to_json_string(run_evaluate(model, samples));
      },
      py::arg("model_path"), py::arg("feature_paths"),
      "Score labelled features; returns the evaluation report as a JSON "
      "string");

  m.def(
      "classify_map",
      [](const std::filesystem::path& model_path,
         const std::filesystem::path& log_path,
         const std::filesystem::path& map_path, const VehicleParams& params) {
        const EcocModel model = load_model(model_path);
        const MultimodalMap map = classify_log(model, log_path, params);
        export_map(map, map_path);
        std::size_t predicted = 0;
        for (const TerrainPatch& patch : map.patches) {
          if (patch.predicted) ++predicted;
        }
        return py::make_tuple(map.patches.size(), predicted);
      },
      py::arg("model_path"), py::arg("log_path"), py::arg("map_path"),
      py::arg("params") = VehicleParams{},
      "Classify a log into a terrain map; returns (patches, classified)");
}

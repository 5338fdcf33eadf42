#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "terrasense/classify/dataset.hpp"
#include "terrasense/classify/ecoc.hpp"
#include "terrasense/core/types.hpp"

namespace terrasense {

/// Per-class one-vs-rest tallies and derived rates (percent). A rate whose
/// denominator is zero is undefined and left empty.
struct ClassMetrics {
  long tp = 0, fp = 0, fn = 0, tn = 0;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> precision;
  std::optional<double> accuracy;
  std::optional<double> f_measure;
};

struct EvaluationReport {
  std::vector<TerrainClass> classes;
  Eigen::MatrixXi confusion;  // rows: predicted, columns: target
  std::vector<ClassMetrics> per_class;
  long total = 0;
  double overall_accuracy = 0.0;  // percent

  /// Confusion matrix and metric table as fixed-point text (one decimal).
  std::string to_table() const;
};

std::string to_json_string(const EvaluationReport& report, int indent = 2);

EvaluationReport evaluate(const std::vector<TerrainClass>& targets,
                          const std::vector<TerrainClass>& predictions,
                          const std::vector<TerrainClass>& classes);

/// Score a labelled dataset with a trained ensemble.
EvaluationReport evaluate(const EcocModel& model, const LabeledDataset& data);

}  // namespace terrasense

#include "terrasense/classify/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "terrasense/core/errors.hpp"

namespace terrasense {
namespace {

using nlohmann::json;

std::string fixed1(const std::optional<double>& value) {
  if (!value) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *value);
  return buf;
}

void pad_to(std::string& line, std::size_t width) {
  if (line.size() < width) line.append(width - line.size(), ' ');
}

json number_or_null(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

}  // namespace

EvaluationReport evaluate(const std::vector<TerrainClass>& targets,
                          const std::vector<TerrainClass>& predictions,
                          const std::vector<TerrainClass>& classes) {
  if (targets.size() != predictions.size()) {
    throw ShapeError("target and prediction counts differ");
  }
  if (classes.empty()) throw InvalidArgumentError("empty class list");

  std::map<TerrainClass, Eigen::Index> index;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    index[classes[k]] = static_cast<Eigen::Index>(k);
  }

  EvaluationReport report;
  report.classes = classes;
  const auto n_classes = static_cast<Eigen::Index>(classes.size());
  report.confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
  report.total = static_cast<long>(targets.size());

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto target = index.find(targets[i]);
    const auto predicted = index.find(predictions[i]);
    if (target == index.end() || predicted == index.end()) {
      throw InvalidArgumentError("sample class missing from the class list");
    }
    report.confusion(predicted->second, target->second) += 1;
  }

  long correct = 0;
  for (Eigen::Index k = 0; k < n_classes; ++k) {
    correct += report.confusion(k, k);
  }
  report.overall_accuracy =
      report.total > 0 ? 100.0 * static_cast<double>(correct) /
                             static_cast<double>(report.total)
                       : 0.0;

  for (Eigen::Index k = 0; k < n_classes; ++k) {
    ClassMetrics m;
    m.tp = report.confusion(k, k);
    m.fn = report.confusion.col(k).sum() - m.tp;
    m.fp = report.confusion.row(k).sum() - m.tp;
    m.tn = report.total - m.tp - m.fn - m.fp;
    const auto rate = [](long num, long den) -> std::optional<double> {
      if (den == 0) return std::nullopt;
      return 100.0 * static_cast<double>(num) / static_cast<double>(den);
    };
    m.recall = rate(m.tp, m.tp + m.fn);
    m.specificity = rate(m.tn, m.tn + m.fp);
    m.precision = rate(m.tp, m.tp + m.fp);
    m.accuracy = rate(m.tp + m.tn, report.total);
    if (m.precision && m.recall && (*m.precision + *m.recall) > 0.0) {
      m.f_measure =
          2.0 * (*m.precision) * (*m.recall) / (*m.precision + *m.recall);
    }
    report.per_class.push_back(m);
  }
  return report;
}

EvaluationReport evaluate(const EcocModel& model, const LabeledDataset& data) {
  if (data.mask != model.mask) {
    throw InvalidArgumentError(
        "dataset feature mask does not match the model ('" + data.mask.name() +
        "' vs '" + model.mask.name() + "')");
  }
  std::vector<TerrainClass> predictions;
  predictions.reserve(static_cast<std::size_t>(data.size()));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    predictions.push_back(model.predict(data.features.row(i)));
  }
  // Report over the union of model and data classes, in enum order.
  std::vector<TerrainClass> classes = model.classes;
  for (const TerrainClass c : data.labels) {
    if (std::find(classes.begin(), classes.end(), c) == classes.end()) {
      classes.push_back(c);
    }
  }
  std::sort(classes.begin(), classes.end());
  return evaluate(data.labels, predictions, classes);
}

std::string EvaluationReport::to_table() const {
  std::size_t label_width = std::string("Predicted \\ Target").size();
  for (const TerrainClass c : classes) {
    label_width = std::max(label_width, display_name(c).size());
  }
  label_width += 2;
  constexpr std::size_t kCell = 20;

  std::ostringstream out;
  out << "Confusion matrix (rows: predicted, columns: target)\n";
  std::string header = "Predicted \\ Target";
  pad_to(header, label_width);
  for (const TerrainClass c : classes) {
    std::string cell = display_name(c);
    header += "  ";
    const std::size_t want = header.size() + kCell - cell.size();
    pad_to(header, want > header.size() ? want : header.size());
    header += cell;
  }
  out << header << "\n";
  for (Eigen::Index r = 0; r < confusion.rows(); ++r) {
    std::string line = display_name(classes[static_cast<std::size_t>(r)]);
    pad_to(line, label_width);
    for (Eigen::Index c = 0; c < confusion.cols(); ++c) {
      char cell[32];
      std::snprintf(cell, sizeof cell, "%d", confusion(r, c));
      line += "  ";
      const std::size_t want = line.size() + kCell - std::string(cell).size();
      pad_to(line, want);
      line += cell;
    }
    out << line << "\n";
  }

  out << "\nPer-class metrics (%)\n";
  const char* columns[] = {"Recall", "Specificity", "Precision", "Accuracy",
                           "F-measure"};
  std::string mh = "Class";
  pad_to(mh, label_width);
  for (const char* col : columns) {
    mh += "  ";
    const std::size_t want = mh.size() + 11 - std::string(col).size();
    pad_to(mh, want);
    mh += col;
  }
  out << mh << "\n";
  for (std::size_t k = 0; k < per_class.size(); ++k) {
    std::string line = display_name(classes[k]);
    pad_to(line, label_width);
    const ClassMetrics& m = per_class[k];
    const std::optional<double> values[] = {m.recall, m.specificity,
                                            m.precision, m.accuracy,
                                            m.f_measure};
    for (const auto& value : values) {
      const std::string cell = fixed1(value);
      line += "  ";
      const std::size_t want = line.size() + 11 - cell.size();
      pad_to(line, want);
      line += cell;
    }
    out << line << "\n";
  }
  char overall[64];
  std::snprintf(overall, sizeof overall, "\nOverall accuracy: %.1f%% (%ld samples)\n",
                overall_accuracy, total);
  out << overall;
  return out.str();
}

std::string to_json_string(const EvaluationReport& report, int indent) {
  json root;
  json classes = json::array();
  for (const TerrainClass c : report.classes) classes.push_back(to_string(c));
  root["classes"] = std::move(classes);

  json confusion = json::array();
  for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < report.confusion.cols(); ++c) {
      row.push_back(report.confusion(r, c));
    }
    confusion.push_back(std::move(row));
  }
  root["confusion"] = std::move(confusion);
  root["confusion_layout"] = "rows: predicted, columns: target";

  json metrics = json::object();
  for (std::size_t k = 0; k < report.per_class.size(); ++k) {
    const ClassMetrics& m = report.per_class[k];
    metrics[to_string(report.classes[k])] = {
        {"tp", m.tp},
        {"fp", m.fp},
        {"fn", m.fn},
        {"tn", m.tn},
        {"recall", number_or_null(m.recall)},
        {"specificity", number_or_null(m.specificity)},
        {"precision", number_or_null(m.precision)},
        {"accuracy", number_or_null(m.accuracy)},
        {"f_measure", number_or_null(m.f_measure)}};
  }
  root["per_class"] = std::move(metrics);
  root["total"] = report.total;
  root["overall_accuracy"] = report.overall_accuracy;
  return root.dump(indent);
}

}  // namespace terrasense

#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "terrasense/classify/ecoc.hpp"
#include "terrasense/classify/metrics.hpp"
#include "terrasense/core/errors.hpp"

using namespace terrasense;

namespace {

const std::vector<TerrainClass> kAll{
    TerrainClass::PloughedTerrain, TerrainClass::UnploughedTerrain,
    TerrainClass::DirtRoad, TerrainClass::Gravel};

// A 302-sample test-set composition: every class predicted correctly except
// twelve dirt-road samples that leak into gravel.
void benchmark_composition(std::vector<TerrainClass>& targets,
                           std::vector<TerrainClass>& predictions) {
  const auto add = [&](TerrainClass target, TerrainClass predicted, int n) {
    for (int i = 0; i < n; ++i) {
      targets.push_back(target);
      predictions.push_back(predicted);
    }
  };
  add(TerrainClass::PloughedTerrain, TerrainClass::PloughedTerrain, 125);
  add(TerrainClass::UnploughedTerrain, TerrainClass::UnploughedTerrain, 48);
  add(TerrainClass::DirtRoad, TerrainClass::DirtRoad, 96);
  add(TerrainClass::DirtRoad, TerrainClass::Gravel, 12);
  add(TerrainClass::Gravel, TerrainClass::Gravel, 21);
}

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

TEST_CASE("gravel arithmetic: 21 true positives and 12 false positives") {
  std::vector<TerrainClass> targets, predictions;
  benchmark_composition(targets, predictions);
  const EvaluationReport report = evaluate(targets, predictions, kAll);

  REQUIRE(report.total == 302);
  const ClassMetrics& gravel = report.per_class[3];
  CHECK(gravel.tp == 21);
  CHECK(gravel.fp == 12);
  CHECK(gravel.fn == 0);
  CHECK(gravel.tn == 269);

  REQUIRE(gravel.recall.has_value());
  REQUIRE(gravel.precision.has_value());
  CHECK(*gravel.recall == 100.0);
  CHECK(*gravel.precision == doctest::Approx(100.0 * 21.0 / 33.0).epsilon(1e-12));
  CHECK(fixed1(*gravel.recall) == "100.0");
  CHECK(fixed1(*gravel.precision) == "63.6");

  // The dirt-road column loses exactly those twelve samples.
  const ClassMetrics& dirt = report.per_class[2];
  CHECK(dirt.tp == 96);
  CHECK(dirt.fn == 12);
  CHECK(dirt.fp == 0);

  CHECK(report.overall_accuracy ==
        doctest::Approx(100.0 * 290.0 / 302.0).epsilon(1e-12));

  const std::string table = report.to_table();
  CHECK(table.find("63.6") != std::string::npos);
  CHECK(table.find("100.0") != std::string::npos);
  CHECK(table.find("Gravel") != std::string::npos);
  CHECK(table.find("rows: predicted") != std::string::npos);
  CHECK(table.find("96.0%") != std::string::npos);
}

TEST_CASE("confusion matrix is predicted-by-target") {
  std::vector<TerrainClass> targets{TerrainClass::DirtRoad};
  std::vector<TerrainClass> predictions{TerrainClass::Gravel};
  const EvaluationReport report = evaluate(targets, predictions, kAll);
  CHECK(report.confusion(3, 2) == 1);  // row: predicted gravel, col: dirt
  CHECK(report.confusion(2, 3) == 0);
  CHECK(report.confusion.sum() == 1);
  CHECK(report.overall_accuracy == 0.0);
}

TEST_CASE("rates with zero denominators stay undefined") {
  const std::vector<TerrainClass> classes{TerrainClass::DirtRoad,
                                          TerrainClass::Gravel};
  const std::vector<TerrainClass> targets{TerrainClass::DirtRoad};
  const std::vector<TerrainClass> predictions{TerrainClass::DirtRoad};
  const EvaluationReport report = evaluate(targets, predictions, classes);

  const ClassMetrics& gravel = report.per_class[1];
  CHECK_FALSE(gravel.recall.has_value());
  CHECK_FALSE(gravel.precision.has_value());
  CHECK_FALSE(gravel.f_measure.has_value());
  REQUIRE(gravel.specificity.has_value());
  CHECK(*gravel.specificity == 100.0);
  REQUIRE(gravel.accuracy.has_value());
  CHECK(*gravel.accuracy == 100.0);

  // Undefined rates appear as '-' in the table and null in the JSON.
  CHECK(report.to_table().find('-') != std::string::npos);
  const auto root = nlohmann::json::parse(to_json_string(report));
  CHECK(root["per_class"]["gravel"]["recall"].is_null());
  CHECK(root["per_class"]["gravel"]["specificity"].get<double>() == 100.0);
}

TEST_CASE("json report carries the complete evaluation") {
  std::vector<TerrainClass> targets, predictions;
  benchmark_composition(targets, predictions);
  const EvaluationReport report = evaluate(targets, predictions, kAll);
  const auto root = nlohmann::json::parse(to_json_string(report));

  CHECK(root["total"].get<long>() == 302);
  CHECK(root["classes"].size() == 4);
  CHECK(root["classes"][3].get<std::string>() == "gravel");
  CHECK(root["confusion"][3][2].get<int>() == 12);
  CHECK(root["confusion_layout"].get<std::string>() ==
        "rows: predicted, columns: target");
  CHECK(root["per_class"]["gravel"]["tp"].get<int>() == 21);
  CHECK(root["per_class"]["gravel"]["precision"].get<double>() ==
        doctest::Approx(63.636363636).epsilon(1e-9));
  CHECK(root["overall_accuracy"].get<double>() ==
        doctest::Approx(96.0264900662).epsilon(1e-9));
}

TEST_CASE("invalid evaluation inputs are rejected") {
  std::vector<TerrainClass> targets{TerrainClass::Gravel};
  std::vector<TerrainClass> two{TerrainClass::Gravel, TerrainClass::Gravel};
  CHECK_THROWS_AS(evaluate(targets, two, kAll), ShapeError);
  CHECK_THROWS_AS(evaluate(targets, targets, {}), InvalidArgumentError);
  const std::vector<TerrainClass> partial{TerrainClass::DirtRoad};
  CHECK_THROWS_AS(evaluate(targets, targets, partial), InvalidArgumentError);
}

TEST_CASE("scoring a dataset requires a matching feature mask") {
  LabeledDataset data;
  data.mask = FeatureMask{false, false, true};
  data.features.resize(8, 4);
  for (int i = 0; i < 8; ++i) {
    const int cls = i % 2;
    for (int j = 0; j < 4; ++j) {
      data.features(i, j) = (j == cls) ? 5.0 + 0.1 * i : 0.1 * j;
    }
    data.labels.push_back(cls == 0 ? TerrainClass::DirtRoad
                                   : TerrainClass::Gravel);
  }
  const EcocModel model = train_ecoc(data, 1.0, 3);

  const EvaluationReport report = evaluate(model, data);
  CHECK(report.total == 8);
  CHECK(report.overall_accuracy == 100.0);

  LabeledDataset wrong = data;
  wrong.mask = FeatureMask{false, true, false};
  CHECK_THROWS_AS(evaluate(model, wrong), InvalidArgumentError);
}

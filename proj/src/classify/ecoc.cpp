#include "terrasense/classify/ecoc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "terrasense/core/errors.hpp"
#include "terrasense/core/log_io.hpp"

namespace terrasense {
namespace {

using nlohmann::json;

constexpr int kModelVersion = 1;

std::vector<TerrainClass> distinct_classes(const std::vector<TerrainClass>& y) {
  std::set<TerrainClass> seen(y.begin(), y.end());
  return {seen.begin(), seen.end()};
}

}  // namespace

Standardizer fit_standardizer(const Eigen::MatrixXd& features) {
  if (features.rows() == 0) {
    throw EmptySeriesError("cannot standardize an empty dataset");
  }
  Standardizer s;
  s.mean = features.colwise().mean();
  const Eigen::MatrixXd centered = features.rowwise() - s.mean.transpose();
  s.scale = (centered.array().square().colwise().sum() /
             static_cast<double>(features.rows()))
                .sqrt();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (s.scale[j] < 1e-12) s.scale[j] = 1.0;
  }
  return s;
}

Eigen::VectorXd EcocModel::decoding_losses(
    const Eigen::VectorXd& features) const {
  if (features.size() != standardizer.mean.size()) {
    throw ShapeError("feature vector does not match the model dimension");
  }
  const Eigen::VectorXd z = standardizer.apply(features);
  Eigen::VectorXd scores(static_cast<Eigen::Index>(learners.size()));
  for (std::size_t l = 0; l < learners.size(); ++l) {
    scores[static_cast<Eigen::Index>(l)] = learners[l].decision(z);
  }
  Eigen::VectorXd losses(coding.rows());
  for (Eigen::Index k = 0; k < coding.rows(); ++k) {
    double total = 0.0;
    int active = 0;
    for (Eigen::Index l = 0; l < coding.cols(); ++l) {
      const int m = coding(k, l);
      if (m == 0) continue;
      total += std::max(0.0, 1.0 - m * scores[l]);
      ++active;
    }
    losses[k] = active > 0 ? total / active : 0.0;
  }
  return losses;
}

TerrainClass EcocModel::predict(const Eigen::VectorXd& features) const {
  const Eigen::VectorXd losses = decoding_losses(features);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < losses.size(); ++k) {
    if (losses[k] < losses[best]) best = k;  // strict: ties keep lowest index
  }
  return classes[static_cast<std::size_t>(best)];
}

EcocModel train_ecoc(const LabeledDataset& data, double penalty,
                     std::uint64_t seed, const SvmTrainOptions& options) {
  if (data.size() == 0) throw EmptySeriesError("empty training set");
  if (!(penalty > 0.0)) throw InvalidArgumentError("penalty C must be positive");

  EcocModel model;
  model.classes = distinct_classes(data.labels);
  const auto n_classes = static_cast<Eigen::Index>(model.classes.size());
  if (n_classes < 2) {
    throw DegenerateLabelsError("training needs at least two classes");
  }
  model.mask = data.mask;
  model.penalty = penalty;
  model.seed = seed;
  model.standardizer = fit_standardizer(data.features);

  Eigen::MatrixXd z = data.features;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    z.row(i) = model.standardizer.apply(data.features.row(i)).transpose();
  }

  std::map<TerrainClass, int> class_index;
  for (Eigen::Index k = 0; k < n_classes; ++k) {
    class_index[model.classes[static_cast<std::size_t>(k)]] = static_cast<int>(k);
  }

  const Eigen::Index n_learners = n_classes * (n_classes - 1) / 2;
  model.coding = Eigen::MatrixXi::Zero(n_classes, n_learners);
  model.learners.reserve(static_cast<std::size_t>(n_learners));

  Eigen::Index learner = 0;
  for (Eigen::Index i = 0; i < n_classes; ++i) {
    for (Eigen::Index j = i + 1; j < n_classes; ++j, ++learner) {
      model.coding(i, learner) = 1;
      model.coding(j, learner) = -1;

      std::vector<Eigen::Index> rows;
      std::vector<int> y;
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        const int c = class_index[data.labels[static_cast<std::size_t>(r)]];
        if (c == i) {
          rows.push_back(r);
          y.push_back(1);
        } else if (c == j) {
          rows.push_back(r);
          y.push_back(-1);
        }
      }
      Eigen::MatrixXd sub(static_cast<Eigen::Index>(rows.size()), z.cols());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        sub.row(static_cast<Eigen::Index>(r)) = z.row(rows[r]);
      }
      model.learners.push_back(
          train_binary_svm(sub, y, penalty, options).model);
    }
  }
  return model;
}

CrossValidation kfold_cv(const LabeledDataset& data, int k, double penalty,
                         std::uint64_t seed, const SvmTrainOptions& options) {
  const Eigen::Index n = data.size();
  if (k < 2 || static_cast<Eigen::Index>(k) > n) {
    throw InvalidKError("fold count must satisfy 2 <= k <= sample count");
  }
  const std::vector<TerrainClass> classes = distinct_classes(data.labels);
  if (classes.size() < 2) {
    throw DegenerateLabelsError("cross-validation needs at least two classes");
  }

  std::map<TerrainClass, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) {
    by_class[data.labels[static_cast<std::size_t>(i)]].push_back(i);
  }
  for (const auto& [cls, ids] : by_class) {
    if (ids.size() < 2) {
      throw InsufficientClassDataError("class '" + to_string(cls) +
                                       "' has fewer than two samples");
    }
  }

  CrossValidation cv;
  cv.folds.assign(static_cast<std::size_t>(k), {});
  std::mt19937_64 rng(seed);
  std::size_t cursor = 0;  // one global round-robin cursor across classes
  for (const TerrainClass cls : classes) {
    auto& ids = by_class[cls];
    std::shuffle(ids.begin(), ids.end(), rng);
    for (const Eigen::Index id : ids) {
      cv.folds[cursor].push_back(id);
      cursor = (cursor + 1) % static_cast<std::size_t>(k);
    }
  }

  Eigen::Index total_errors = 0;
  for (const auto& fold : cv.folds) {
    std::vector<char> in_test(static_cast<std::size_t>(n), 0);
    for (const Eigen::Index id : fold) in_test[static_cast<std::size_t>(id)] = 1;

    LabeledDataset train;
    train.mask = data.mask;
    train.features.resize(n - static_cast<Eigen::Index>(fold.size()),
                          data.features.cols());
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (in_test[static_cast<std::size_t>(i)]) continue;
      train.features.row(r++) = data.features.row(i);
      train.labels.push_back(data.labels[static_cast<std::size_t>(i)]);
    }
    const EcocModel model = train_ecoc(train, penalty, seed, options);

    Eigen::Index errors = 0;
    for (const Eigen::Index id : fold) {
      if (model.predict(data.features.row(id)) !=
          data.labels[static_cast<std::size_t>(id)]) {
        ++errors;
      }
    }
    total_errors += errors;
    cv.fold_errors.push_back(static_cast<double>(errors) /
                             static_cast<double>(fold.size()));
  }
  cv.mean_error = static_cast<double>(total_errors) / static_cast<double>(n);
  return cv;
}

void save_model(const EcocModel& model, const std::filesystem::path& file) {
  json root;
  root["format"] = "terrasense-ecoc";
  root["version"] = kModelVersion;
  root["mask"] = model.mask.name();
  root["penalty"] = model.penalty;
  root["seed"] = model.seed;
  json classes = json::array();
  for (const TerrainClass c : model.classes) classes.push_back(to_string(c));
  root["classes"] = std::move(classes);

  root["standardizer"] = {
      {"mean", std::vector<double>(model.standardizer.mean.begin(),
                                   model.standardizer.mean.end())},
      {"scale", std::vector<double>(model.standardizer.scale.begin(),
                                    model.standardizer.scale.end())}};

  json coding = json::array();
  for (Eigen::Index k = 0; k < model.coding.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index l = 0; l < model.coding.cols(); ++l) {
      row.push_back(model.coding(k, l));
    }
    coding.push_back(std::move(row));
  }
  root["coding"] = std::move(coding);

  json learners = json::array();
  for (const BinaryLinearSvm& svm : model.learners) {
    learners.push_back(
        {{"weights",
          std::vector<double>(svm.weights.begin(), svm.weights.end())},
         {"bias", svm.bias}});
  }
  root["learners"] = std::move(learners);
  write_text_atomic(root.dump(2) + "\n", file);
}

EcocModel load_model(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open model '" + file.string() + "'");
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded() || !root.is_object()) {
    throw ParseError(0, "model file is not a JSON object");
  }
  if (root.value("format", std::string()) != "terrasense-ecoc") {
    throw ParseError(0, "not a terrasense model file");
  }
  if (root.value("version", -1) != kModelVersion) {
    throw ParseError(0, "unsupported model version");
  }

  EcocModel model;
  try {
    model.mask = parse_feature_mask(root.at("mask").get<std::string>());
    model.penalty = root.at("penalty").get<double>();
    model.seed = root.at("seed").get<std::uint64_t>();
    for (const json& name : root.at("classes")) {
      model.classes.push_back(
          terrain_class_from_string(name.get<std::string>()));
    }
    const auto mean = root.at("standardizer").at("mean").get<std::vector<double>>();
    const auto scale =
        root.at("standardizer").at("scale").get<std::vector<double>>();
    model.standardizer.mean =
        Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
    model.standardizer.scale =
        Eigen::Map<const Eigen::VectorXd>(scale.data(), scale.size());

    const json& coding = root.at("coding");
    const auto n_classes = static_cast<Eigen::Index>(model.classes.size());
    const auto n_learners =
        coding.empty() ? 0 : static_cast<Eigen::Index>(coding.at(0).size());
    model.coding.resize(n_classes, n_learners);
    if (static_cast<Eigen::Index>(coding.size()) != n_classes) {
      throw ParseError(0, "coding matrix row count mismatch");
    }
    for (Eigen::Index k = 0; k < n_classes; ++k) {
      const json& row = coding.at(static_cast<std::size_t>(k));
      if (static_cast<Eigen::Index>(row.size()) != n_learners) {
        throw ParseError(0, "ragged coding matrix");
      }
      for (Eigen::Index l = 0; l < n_learners; ++l) {
        model.coding(k, l) = row.at(static_cast<std::size_t>(l)).get<int>();
      }
    }

    for (const json& item : root.at("learners")) {
      BinaryLinearSvm svm;
      const auto weights = item.at("weights").get<std::vector<double>>();
      svm.weights =
          Eigen::Map<const Eigen::VectorXd>(weights.data(), weights.size());
      svm.bias = item.at("bias").get<double>();
      model.learners.push_back(std::move(svm));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed model: ") + e.what());
  }

  if (static_cast<Eigen::Index>(model.learners.size()) != model.coding.cols()) {
    throw ParseError(0, "learner count does not match the coding matrix");
  }
  if (model.standardizer.mean.size() != model.mask.dimension() ||
      model.standardizer.scale.size() != model.mask.dimension()) {
    throw ParseError(0, "standardizer does not match the feature mask");
  }
  for (const BinaryLinearSvm& svm : model.learners) {
    if (svm.weights.size() != model.mask.dimension()) {
      throw ParseError(0, "learner dimension does not match the feature mask");
    }
  }
  return model;
}

}  // namespace terrasense

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "terrasense/classify/dataset.hpp"
#include "terrasense/classify/svm.hpp"

namespace terrasense {

/// Per-feature affine normalisation fitted on the training set and stored
/// with the model. Constant features get scale 1.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    return (x - mean).cwiseQuotient(scale);
  }
};

Standardizer fit_standardizer(const Eigen::MatrixXd& features);

/// One-vs-one error-correcting output code ensemble of linear SVMs.
/// Column l of `coding` describes learner l: +1 marks its positive class,
/// -1 its negative class, 0 the classes it ignores.
struct EcocModel {
  std::vector<TerrainClass> classes;      // ascending, as seen in training
  Eigen::MatrixXi coding;                 // K x L
  std::vector<BinaryLinearSvm> learners;  // L = K(K-1)/2
  Standardizer standardizer;
  FeatureMask mask;
  double penalty = 1.0;
  std::uint64_t seed = 0;

  /// Mean hinge loss of each class's code word against the learner scores
  /// (lower is better).
  Eigen::VectorXd decoding_losses(const Eigen::VectorXd& features) const;

  /// Loss-based decoding; ties resolve to the lowest class index.
  TerrainClass predict(const Eigen::VectorXd& features) const;
};

EcocModel train_ecoc(const LabeledDataset& data, double penalty,
                     std::uint64_t seed, const SvmTrainOptions& options = {});

struct CrossValidation {
  double mean_error = 0.0;  // misclassified fraction over all folds
  std::vector<double> fold_errors;
  std::vector<std::vector<Eigen::Index>> folds;  // test indices per fold
};

/// Stratified k-fold cross-validation: indices of each class are shuffled
/// with the seed and dealt round-robin to folds through one global cursor,
/// so fold sizes stay balanced overall. Requires 2 <= k <= n and at least
/// two samples per class.
CrossValidation kfold_cv(const LabeledDataset& data, int k, double penalty,
                         std::uint64_t seed,
                         const SvmTrainOptions& options = {});

/// JSON model persistence; identical inputs write identical bytes.
void save_model(const EcocModel& model, const std::filesystem::path& file);
EcocModel load_model(const std::filesystem::path& file);

}  // namespace terrasense

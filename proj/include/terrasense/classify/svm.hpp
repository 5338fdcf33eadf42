#pragma once

#include <vector>

#include <Eigen/Core>

#include "terrasense/core/types.hpp"

namespace terrasense {

struct SvmTrainOptions {
  double tolerance = 1e-6;  // projected-gradient KKT threshold
  int max_epochs = 10000;   // full passes over the data
};

/// Soft-margin linear classifier: decision(x) = w.x + b.
struct BinaryLinearSvm {
  Eigen::VectorXd weights;
  double bias = 0.0;

  double decision(const Eigen::VectorXd& x) const {
    return weights.dot(x) + bias;
  }
};

struct SvmSolution {
  BinaryLinearSvm model;
  Eigen::VectorXd alpha;       // box-constrained dual variables in [0, C]
  double dual_objective = 0.0; // 0.5 (|w|^2 + b^2) - sum(alpha), minimised
  int epochs = 0;
  bool converged = false;
};

/// Train by dual coordinate descent on the L1-loss SVM with the bias folded
/// in as a constant-one feature (the dual is then box-constrained only).
/// Coordinates are visited in deterministic cyclic order; training stops when
/// every projected gradient is below the tolerance or after max_epochs.
/// Labels must be +/-1 with both signs present.
SvmSolution train_binary_svm(const Eigen::MatrixXd& features,
                             const std::vector<int>& labels, double penalty,
                             const SvmTrainOptions& options = {});

}  // namespace terrasense

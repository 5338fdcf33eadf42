#include "terrasense/classify/svm.hpp"

#include <algorithm>
#include <cmath>

#include "terrasense/core/errors.hpp"

namespace terrasense {

SvmSolution train_binary_svm(const Eigen::MatrixXd& features,
                             const std::vector<int>& labels, double penalty,
                             const SvmTrainOptions& options) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw ShapeError("label count does not match feature rows");
  }
  if (!(penalty > 0.0)) throw InvalidArgumentError("penalty C must be positive");
  if (!(options.tolerance > 0.0) || options.max_epochs < 1) {
    throw InvalidArgumentError("invalid training options");
  }
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) {
      has_pos = true;
    } else if (y == -1) {
      has_neg = true;
    } else {
      throw InvalidArgumentError("binary labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    throw DegenerateLabelsError("binary training set needs both classes");
  }

  // Augmented-bias formulation: x_i <- [x_i; 1], so the dual has box
  // constraints only and coordinate steps stay closed-form.
  Eigen::VectorXd q_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    q_diag[i] = features.row(i).squaredNorm() + 1.0;
  }

  SvmSolution solution;
  solution.alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double b = 0.0;

  for (int epoch = 1; epoch <= options.max_epochs; ++epoch) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double yi = labels[static_cast<std::size_t>(i)];
      const double margin = yi * (features.row(i).dot(w) + b);
      const double gradient = margin - 1.0;
      const double a = solution.alpha[i];

      double projected = gradient;
      if (a <= 0.0) {
        projected = std::min(gradient, 0.0);
      } else if (a >= penalty) {
        projected = std::max(gradient, 0.0);
      }
      worst = std::max(worst, std::abs(projected));
      if (projected == 0.0) continue;

      const double updated =
          std::clamp(a - gradient / q_diag[i], 0.0, penalty);
      const double delta = updated - a;
      if (delta == 0.0) continue;
      solution.alpha[i] = updated;
      w += delta * yi * features.row(i).transpose();
      b += delta * yi;
    }
    solution.epochs = epoch;
    if (worst <= options.tolerance) {
      solution.converged = true;
      break;
    }
  }

  solution.model.weights = std::move(w);
  solution.model.bias = b;
  solution.dual_objective =
      0.5 * (solution.model.weights.squaredNorm() + b * b) -
      solution.alpha.sum();
  return solution;
}

}  // namespace terrasense

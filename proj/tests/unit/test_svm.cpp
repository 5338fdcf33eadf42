#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "terrasense/classify/svm.hpp"
#include "terrasense/core/errors.hpp"

using namespace terrasense;

namespace {

struct Problem {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Problem random_problem(std::mt19937_64& rng, int n, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Problem p;
  p.x.resize(n, d);
  for (int i = 0; i < n; ++i) {
    const int label = (i < n / 2) ? 1 : -1;
    p.y.push_back(label);
    for (int j = 0; j < d; ++j) {
      p.x(i, j) = normal(rng) + 0.8 * label;  // overlapping classes
    }
  }
  return p;
}

}  // namespace

TEST_CASE("two opposing points give the analytic maximum-margin solution") {
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 0.0,
      -1.0, 0.0;
  const std::vector<int> y{1, -1};

  const SvmSolution sol = train_binary_svm(x, y, 10.0);
  REQUIRE(sol.model.weights.size() == 2);
  // With the bias folded in, Q = 2 I and both duals settle at 1/2.
  CHECK(sol.alpha(0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.alpha(1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.model.weights(0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.model.weights(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(sol.model.bias == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(sol.dual_objective == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(sol.converged);
  CHECK(sol.epochs > 0);

  CHECK(sol.model.decision(Eigen::Vector2d(2.0, 0.0)) > 0.0);
  CHECK(sol.model.decision(Eigen::Vector2d(-2.0, 0.0)) < 0.0);
}

TEST_CASE("a small penalty caps the duals at the box bound") {
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 0.0,
      -1.0, 0.0;
  const std::vector<int> y{1, -1};
  const SvmSolution sol = train_binary_svm(x, y, 0.3);
  CHECK(sol.alpha(0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(sol.alpha(1) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(sol.model.weights(0) == doctest::Approx(0.6).epsilon(1e-9));
  // 0.5 * |w|^2 - sum(alpha) = 0.18 - 0.6
  CHECK(sol.dual_objective == doctest::Approx(-0.42).epsilon(1e-9));
}

TEST_CASE("coordinate descent reaches the projected-gradient optimum") {
  std::mt19937_64 rng(41);
  const double penalties[] = {0.1, 1.0, 10.0};
  for (int trial = 0; trial < 12; ++trial) {
    const Problem p = random_problem(rng, 10, 3);
    const double c = penalties[trial % 3];
    const SvmSolution dcd = train_binary_svm(p.x, p.y, c);
    const oracles::QpSolution qp = oracles::reference_svm_dual(p.x, p.y, c);
    REQUIRE(qp.converged);
    CHECK(std::abs(dcd.dual_objective - qp.objective) < 1e-4);
    // Both must agree on the primal weight vector as well.
    Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
    double b = 0.0;
    for (int i = 0; i < 10; ++i) {
      w += qp.alpha(i) * p.y[static_cast<std::size_t>(i)] *
           p.x.row(i).transpose();
      b += qp.alpha(i) * p.y[static_cast<std::size_t>(i)];
    }
    CHECK((dcd.model.weights - w).norm() < 1e-3);
    CHECK(std::abs(dcd.model.bias - b) < 1e-3);
  }
}

TEST_CASE("separable blobs are classified perfectly") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> normal(0.0, 0.3);
  const int n = 40;
  Eigen::MatrixXd x(n, 2);
  std::vector<int> y;
  for (int i = 0; i < n; ++i) {
    const int label = (i % 2 == 0) ? 1 : -1;
    y.push_back(label);
    x(i, 0) = 3.0 * label + normal(rng);
    x(i, 1) = normal(rng);
  }
  const SvmSolution sol = train_binary_svm(x, y, 1.0);
  CHECK(sol.converged);
  for (int i = 0; i < n; ++i) {
    CHECK(sol.model.decision(x.row(i).transpose()) * y[static_cast<std::size_t>(i)] >
          0.0);
  }
}

TEST_CASE("degenerate training inputs are rejected") {
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 0.0, -1.0, 0.0;

  CHECK_THROWS_AS(train_binary_svm(x, {1, 1}, 1.0), DegenerateLabelsError);
  CHECK_THROWS_AS(train_binary_svm(x, {-1, -1}, 1.0), DegenerateLabelsError);
  CHECK_THROWS_AS(train_binary_svm(x, {1, 0}, 1.0), InvalidArgumentError);
  CHECK_THROWS_AS(train_binary_svm(x, {1}, 1.0), ShapeError);
  CHECK_THROWS_AS(train_binary_svm(x, {1, -1}, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(train_binary_svm(x, {1, -1}, -2.0), InvalidArgumentError);
  CHECK_THROWS_AS(train_binary_svm(Eigen::MatrixXd(0, 2), {}, 1.0),
                  DegenerateLabelsError);
}

TEST_CASE("training is deterministic") {
  std::mt19937_64 rng(47);
  const Problem p = random_problem(rng, 16, 4);
  const SvmSolution a = train_binary_svm(p.x, p.y, 1.0);
  const SvmSolution b = train_binary_svm(p.x, p.y, 1.0);
  CHECK((a.model.weights - b.model.weights).norm() == 0.0);
  CHECK(a.model.bias == b.model.bias);
  CHECK(a.epochs == b.epochs);
}

TEST_CASE("an exhausted epoch budget reports non-convergence") {
  std::mt19937_64 rng(53);
  const Problem p = random_problem(rng, 20, 3);
  SvmTrainOptions options;
  options.max_epochs = 1;
  options.tolerance = 1e-14;
  const SvmSolution sol = train_binary_svm(p.x, p.y, 10.0, options);
  CHECK_FALSE(sol.converged);
  CHECK(sol.epochs == 1);
}

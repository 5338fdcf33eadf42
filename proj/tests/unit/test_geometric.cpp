#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "terrasense/core/errors.hpp"
#include "terrasense/features/geometric.hpp"

using namespace terrasense;

namespace {

std::vector<Eigen::Vector3d> plane_grid(double a, double b, double c,
                                        double noise_std = 0.0,
                                        unsigned seed = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, noise_std);
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double x = 0.1 * i;
      const double y = 0.1 * j;
      double z = a * x + b * y + c;
      if (noise_std > 0.0) z += noise(rng);
      pts.emplace_back(x, y, z);
    }
  }
  return pts;
}

std::vector<ColoredPoint> colored(const std::vector<Eigen::Vector3d>& pts) {
  std::vector<ColoredPoint> out;
  for (const auto& p : pts) out.push_back({p, {100.0, 100.0, 100.0}});
  return out;
}

}  // namespace

TEST_CASE("an exact plane fits with zero residual and the analytic slope") {
  const auto pts = plane_grid(0.1, 0.2, 3.0);
  const PlaneFit fit = fit_plane(pts);
  // Normal is parallel to (-0.1, -0.2, 1), so the slope against vertical is
  // acos(1 / |(-0.1, -0.2, 1)|).
  const double expected_slope = std::acos(1.0 / std::sqrt(1.0 + 0.01 + 0.04));
  CHECK(std::acos(fit.normal.z()) ==
        doctest::Approx(expected_slope).epsilon(1e-10));
  CHECK(fit.singular_values[2] < 1e-12);  // stored descending

  const GeometricFeatures g = geometric_feature_vector(colored(pts));
  CHECK(g.slope == doctest::Approx(expected_slope).epsilon(1e-10));
  CHECK(g.fit_residual < 1e-12);
}

TEST_CASE("normal orientation always points upward") {
  const auto pts = plane_grid(0.5, -0.3, 1.0, 0.01, 5);
  const PlaneFit fit = fit_plane(pts);
  CHECK(fit.normal.z() >= 0.0);
  CHECK(fit.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("horizontal plane has zero slope, 45-degree ramp has pi/4") {
  const auto flat = plane_grid(0.0, 0.0, 2.0, 1e-6, 1);
  CHECK(geometric_feature_vector(colored(flat)).slope ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-3));

  const auto ramp = plane_grid(1.0, 0.0, 0.0);
  CHECK(geometric_feature_vector(colored(ramp)).slope ==
        doctest::Approx(std::acos(1.0 / std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("fit residual matches the grid-search oracle on noisy patches") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> slope(-0.6, 0.6);
  std::uniform_real_distribution<double> noise_level(0.002, 0.03);
  for (int trial = 0; trial < 25; ++trial) {
    const auto pts = plane_grid(slope(rng), slope(rng), 1.0, noise_level(rng),
                                100 + trial);
    const PlaneFit fit = fit_plane(pts);
    const double oracle = oracles::reference_plane_residual(pts);
    CHECK(std::abs(fit.singular_values[2] - oracle) < 1e-10);
  }
}

TEST_CASE("height statistics match direct computation") {
  const auto pts = plane_grid(0.2, -0.1, 0.5, 0.02, 9);
  std::vector<double> heights;
  for (const auto& p : pts) heights.push_back(p.z());
  const auto o = oracles::reference_moments(heights);
  double lo = heights[0], hi = heights[0];
  for (double h : heights) {
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  const GeometricFeatures g = geometric_feature_vector(colored(pts));
  CHECK(g.z_variance == doctest::Approx(o.variance).epsilon(1e-12));
  CHECK(g.height_range == doctest::Approx(hi - lo).epsilon(1e-15));

  const auto flat = g.flat();
  CHECK(flat[0] == g.slope);
  CHECK(flat[1] == g.fit_residual);
  CHECK(flat[2] == g.z_variance);
  CHECK(flat[3] == g.height_range);
}

TEST_CASE("degenerate point sets are rejected") {
  SUBCASE("fewer than three points") {
    std::vector<Eigen::Vector3d> two{{0, 0, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(fit_plane(two), DegeneratePatchError);
    CHECK_THROWS_AS(fit_plane(std::vector<Eigen::Vector3d>{}),
                    DegeneratePatchError);
  }
  SUBCASE("collinear points") {
    std::vector<Eigen::Vector3d> line;
    for (int i = 0; i < 10; ++i) line.emplace_back(0.1 * i, 0.2 * i, 0.05 * i);
    CHECK_THROWS_AS(fit_plane(line), RankDeficientError);
  }
  SUBCASE("coincident points") {
    std::vector<Eigen::Vector3d> same(5, Eigen::Vector3d(1.0, 2.0, 3.0));
    CHECK_THROWS_AS(fit_plane(same), RankDeficientError);
  }
}

TEST_CASE("singular values are returned in descending order") {
  const auto pts = plane_grid(0.3, 0.1, 0.0, 0.01, 77);
  const PlaneFit fit = fit_plane(pts);
  CHECK(fit.singular_values[0] >= fit.singular_values[1]);
  CHECK(fit.singular_values[1] >= fit.singular_values[2]);
  CHECK(fit.singular_values[2] >= 0.0);
}

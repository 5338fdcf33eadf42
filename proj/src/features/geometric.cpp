#include "terrasense/features/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "terrasense/core/errors.hpp"

namespace terrasense {
namespace {

PlaneFit fit_plane_impl(const std::vector<Eigen::Vector3d>& pts) {
  const double n = static_cast<double>(pts.size());
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= n;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) {
    const Eigen::Vector3d d = p - centroid;
    cov += d * d.transpose();
  }
  cov /= n;

  // The covariance matrix is symmetric PSD, so its singular values are its
  // eigenvalues; the minimum-spread direction is the last eigenvector.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
  const double sigma1 = std::max(evals(2), 0.0);
  const double sigma2 = std::max(evals(1), 0.0);

  if (!(sigma1 > 0.0) || sigma2 < 1e-12 * sigma1) {
    throw RankDeficientError("points are collinear or coincident");
  }

  PlaneFit fit;
  fit.centroid = centroid;
  fit.singular_values = {sigma1, sigma2, std::max(evals(0), 0.0)};
  fit.normal = solver.eigenvectors().col(0);
  if (fit.normal.z() < 0.0) fit.normal = -fit.normal;
  return fit;
}

}  // namespace

PlaneFit fit_plane(std::span<const Eigen::Vector3d> points) {
  if (points.size() < 3) {
    throw DegeneratePatchError("plane fit needs at least 3 points");
  }
  return fit_plane_impl({points.begin(), points.end()});
}

GeometricFeatures geometric_feature_vector(std::span<const ColoredPoint> points) {
  if (points.size() < 3) {
    throw DegeneratePatchError("geometric features need at least 3 points");
  }
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back(p.position);

  const PlaneFit fit = fit_plane_impl(pts);

  GeometricFeatures f;
  const double cos_slope = std::clamp(fit.normal.z(), -1.0, 1.0);
  f.slope = std::acos(cos_slope);
  f.fit_residual = fit.singular_values(2);

  const double n = static_cast<double>(pts.size());
  double zsum = 0.0;
  double zmin = pts.front().z(), zmax = pts.front().z();
  for (const auto& p : pts) {
    zsum += p.z();
    zmin = std::min(zmin, p.z());
    zmax = std::max(zmax, p.z());
  }
  const double zmean = zsum / n;
  double zvar = 0.0;
  for (const auto& p : pts) {
    const double d = p.z() - zmean;
    zvar += d * d;
  }
  f.z_variance = zvar / n;
  f.height_range = zmax - zmin;
  return f;
}

}  // namespace terrasense

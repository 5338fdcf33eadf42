#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "terrasense/core/types.hpp"
#include "terrasense/features/color.hpp"
#include "terrasense/features/contact.hpp"
#include "terrasense/features/geometric.hpp"

namespace terrasense {

/// Which feature families enter the classifier. The full vector is the
/// concatenation colour (12) + geometric (4) + contact (4) in that order,
/// restricted to the enabled families.
struct FeatureMask {
  bool color = true;
  bool geometric = true;
  bool contact = true;

  int dimension() const {
    return (color ? 12 : 0) + (geometric ? 4 : 0) + (contact ? 4 : 0);
  }
  std::string name() const;
  bool operator==(const FeatureMask&) const = default;
};

/// Parse "color", "geometric", "contact", combinations joined with '+'
/// ("color+contact"), or "all".
FeatureMask parse_feature_mask(const std::string& text);

/// Feature record of one terrain patch, modality-wise optional.
struct PatchSample {
  std::optional<TerrainClass> label;
  std::optional<ColorFeatures> color;
  std::optional<GeometricFeatures> geometric;
  std::optional<ContactFeatures> contact;
};

/// Throws MissingModalityError when the sample lacks an enabled family.
Eigen::VectorXd feature_row(const PatchSample& sample, const FeatureMask& mask);

struct LabeledDataset {
  Eigen::MatrixXd features;  // n x mask.dimension()
  std::vector<TerrainClass> labels;
  FeatureMask mask;

  Eigen::Index size() const { return features.rows(); }
};

/// Assemble the design matrix from labelled samples; unlabelled records are
/// skipped (they cannot train or score).
LabeledDataset build_dataset(const std::vector<PatchSample>& samples,
                             const FeatureMask& mask);

}  // namespace terrasense

#include "terrasense/classify/dataset.hpp"

#include <sstream>

#include "terrasense/core/errors.hpp"

namespace terrasense {

std::string FeatureMask::name() const {
  if (color && geometric && contact) return "all";
  std::string out;
  const auto add = [&out](const char* token) {
    if (!out.empty()) out += '+';
    out += token;
  };
  if (color) add("color");
  if (geometric) add("geometric");
  if (contact) add("contact");
  return out.empty() ? "none" : out;
}

FeatureMask parse_feature_mask(const std::string& text) {
  FeatureMask mask{false, false, false};
  std::stringstream stream(text);
  std::string token;
  bool any = false;
  while (std::getline(stream, token, '+')) {
    if (token.empty()) continue;
    any = true;
    if (token == "all") {
      mask.color = mask.geometric = mask.contact = true;
    } else if (token == "color" || token == "colour") {
      mask.color = true;
    } else if (token == "geometric" || token == "geom") {
      mask.geometric = true;
    } else if (token == "contact") {
      mask.contact = true;
    } else {
      throw InvalidArgumentError("unknown feature family '" + token + "'");
    }
  }
  if (!any) throw InvalidArgumentError("empty feature mask");
  return mask;
}

Eigen::VectorXd feature_row(const PatchSample& sample, const FeatureMask& mask) {
  Eigen::VectorXd row(mask.dimension());
  Eigen::Index at = 0;
  if (mask.color) {
    if (!sample.color) throw MissingModalityError("sample lacks colour features");
    for (double v : sample.color->flat()) row[at++] = v;
  }
  if (mask.geometric) {
    if (!sample.geometric) {
      throw MissingModalityError("sample lacks geometric features");
    }
    for (double v : sample.geometric->flat()) row[at++] = v;
  }
  if (mask.contact) {
    if (!sample.contact) {
      throw MissingModalityError("sample lacks contact features");
    }
    for (double v : sample.contact->flat()) row[at++] = v;
  }
  return row;
}

LabeledDataset build_dataset(const std::vector<PatchSample>& samples,
                             const FeatureMask& mask) {
  if (mask.dimension() == 0) throw InvalidArgumentError("empty feature mask");
  std::vector<const PatchSample*> labelled;
  labelled.reserve(samples.size());
  for (const PatchSample& s : samples) {
    if (s.label) labelled.push_back(&s);
  }
  LabeledDataset data;
  data.mask = mask;
  data.features.resize(static_cast<Eigen::Index>(labelled.size()),
                       mask.dimension());
  data.labels.reserve(labelled.size());
  for (std::size_t i = 0; i < labelled.size(); ++i) {
    data.features.row(static_cast<Eigen::Index>(i)) =
        feature_row(*labelled[i], mask).transpose();
    data.labels.push_back(*labelled[i]->label);
  }
  return data;
}

}  // namespace terrasense

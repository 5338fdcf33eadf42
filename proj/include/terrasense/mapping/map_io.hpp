#pragma once

#include <filesystem>

#include "terrasense/mapping/patch.hpp"

namespace terrasense {

/// Write a map as a JSON container plus one point-cloud CSV sidecar per
/// patch (under `<stem>_patches/` next to the file). Feature values, labels
/// and traversal windows round-trip exactly; absent modalities are null.
void export_map(const MultimodalMap& map, const std::filesystem::path& file);

MultimodalMap import_map(const std::filesystem::path& file);

}  // namespace terrasense

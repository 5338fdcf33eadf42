#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "terrasense/core/types.hpp"

namespace terrasense {

enum class LogFormat { Jsonl };

/// Parse a JSON-lines sensor log. `base_dir` resolves relative point-cloud
/// file references. Rejects out-of-order records within any stream (with the
/// offending line number) and completely empty logs.
SensorSeries ingest_log(std::istream& source,
                        const std::filesystem::path& base_dir = ".",
                        LogFormat format = LogFormat::Jsonl);

/// Convenience overload reading from a file; cloud references resolve
/// relative to the log's directory.
SensorSeries ingest_log_file(const std::filesystem::path& path,
                             LogFormat format = LogFormat::Jsonl);

/// Write a series as JSON lines. Point-cloud frames are written as sidecar
/// CSV files (x,y,z,r,g,b per line) under `cloud_dir` relative to `base_dir`,
/// and referenced from the log. Numeric fields round-trip at 64-bit
/// precision.
void export_log(const SensorSeries& series, std::ostream& out,
                const std::filesystem::path& base_dir,
                const std::string& cloud_dir);

void export_log_file(const SensorSeries& series,
                     const std::filesystem::path& path);

/// Point-cloud sidecar format shared by logs and maps: one `x,y,z,r,g,b` row
/// per point, full double precision.
std::vector<ColoredPoint> read_cloud_csv(const std::filesystem::path& path);
void write_cloud_csv(const std::vector<ColoredPoint>& points,
                     const std::filesystem::path& path);

/// Write text through a temporary file in the same directory and rename it
/// into place, so readers never observe a partial artifact.
void write_text_atomic(const std::string& text,
                       const std::filesystem::path& path);

}  // namespace terrasense

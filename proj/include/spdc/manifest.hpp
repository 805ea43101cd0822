#pragma once

#include <string>
#include <vector>

namespace spdc {

/// Record of one CLI invocation; identical config + tool version yield an
/// identical config hash.
struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::string subcommand;
  std::vector<std::string> output_paths;
  long long wall_ms = 0;
};

std::string manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace spdc

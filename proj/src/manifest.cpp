#include "spdc/manifest.hpp"

#include "spdc/json_writer.hpp"

namespace spdc {

std::string manifest_to_json(const RunManifest& m) {
  JsonWriter w;
  w.put("config_hash", m.config_hash)
      .put("tool_version", m.tool_version)
      .put("subcommand", m.subcommand)
      .put("output_paths", m.output_paths)
      .put("wall_ms", m.wall_ms);
  return w.str();
}

void write_manifest(const RunManifest& m, const std::string& path) {
  write_text_file(path, manifest_to_json(m));
}

}  // namespace spdc

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "x1/gateway.hpp"
#include "x1/types.hpp"

namespace x1 {

inline constexpr std::string_view kToolVersion = "0.3.0";

/// Built-in configuration defaults (lowest precedence layer).
nlohmann::json default_config();

/// defaults ← config file ← flag overrides, each layer merged as a JSON
/// merge patch. Relative endpoint fixture paths in the file are resolved
/// against the file's directory. Throws IoError / ValidationError.
nlohmann::json resolve_config(const std::optional<std::filesystem::path> &config_file,
                              const nlohmann::json &flag_overrides);

struct RunManifest {
  std::string run_id;
  std::string command;
  std::uint64_t seed = 0;
  GatewayMode mode = GatewayMode::live;
  std::filesystem::path fixtures;
  std::size_t parallelism = 1;
  double quality_threshold = 0.4;
  std::size_t guard_block = kDefaultGuardBlock;
  int runs = 3;
  double awareness_ratio = 1.0;
  std::optional<Language> pivot;
  bool detect_default = true;
  std::map<std::string, ModelEndpoint> endpoints; ///< by role name
  std::map<std::string, std::string> dataset_hashes; ///< file name → sha256
  std::string tool_version{kToolVersion};
  std::string translation_prompt_version;
  std::map<std::string, std::string> timestamps; ///< omitted in replay mode
  /// Subcommand arguments (output location excluded); `replay` re-runs them.
  nlohmann::json args = nlohmann::json::object();
};

/// Builds a manifest from a resolved config. When the config has no
/// "run_id", one is derived from the command, the config and the dataset
/// hashes, so identical inputs give identical ids.
RunManifest make_manifest(const std::string &command, const nlohmann::json &config,
                          const std::map<std::string, std::filesystem::path> &datasets);

/// Endpoint for `role`; throws ValidationError when absent or invalid.
const ModelEndpoint &endpoint_for(const RunManifest &m, const std::string &role);

GatewayOptions gateway_options(const RunManifest &m);

std::string to_string(GatewayMode mode);
GatewayMode gateway_mode_from_string(std::string_view s);

nlohmann::json to_json(const RunManifest &m);
RunManifest manifest_from_json(const nlohmann::json &j);

/// Writes `{dir}/manifest.json`, stamping the finish time unless replaying.
void write_manifest(const std::filesystem::path &dir, RunManifest m);

} // namespace x1

#include "x1/manifest.hpp"

#include <chrono>
#include <ctime>

#include "x1/error.hpp"
#include "x1/jsonl.hpp"

namespace x1 {

using nlohmann::json;

json default_config() {
  return json{{"seed", 0},
              {"mode", "live"},
              {"fixtures", ""},
              {"parallelism", 4},
              {"quality_threshold", 0.4},
              {"guard_block", kDefaultGuardBlock},
              {"runs", 3},
              {"awareness_ratio", 1.0},
              {"pivot", nullptr},
              {"detect_default", true},
              {"endpoints", json::object()}};
}

json resolve_config(const std::optional<std::filesystem::path> &config_file,
                    const json &flag_overrides) {
  json config = default_config();
  if (config_file) {
    json file;
    try {
      file = json::parse(read_text_file(*config_file));
    } catch (const json::parse_error &e) {
      throw ValidationError("config " + config_file->string() + ": " + e.what());
    }
    if (!file.is_object())
      throw ValidationError("config " + config_file->string() + " is not a JSON object");
    const auto base = config_file->parent_path();
    if (auto eps = file.find("endpoints"); eps != file.end() && eps->is_object()) {
      for (auto &[role, ep] : eps->items()) {
        if (auto f = ep.find("fixture"); f != ep.end() && f->is_string() && !f->get<std::string>().empty()) {
          std::filesystem::path p = f->get<std::string>();
          if (p.is_relative())
            *f = (base / p).lexically_normal().string();
        }
      }
    }
    if (auto f = file.find("fixtures"); f != file.end() && f->is_string() && !f->get<std::string>().empty()) {
      std::filesystem::path p = f->get<std::string>();
      if (p.is_relative())
        *f = (base / p).lexically_normal().string();
    }
    config.merge_patch(file);
  }
  if (!flag_overrides.is_null())
    config.merge_patch(flag_overrides);
  return config;
}

std::string to_string(GatewayMode mode) {
  switch (mode) {
  case GatewayMode::record:
    return "record";
  case GatewayMode::replay:
    return "replay";
  case GatewayMode::live:
    break;
  }
  return "live";
}

GatewayMode gateway_mode_from_string(std::string_view s) {
  if (s == "live")
    return GatewayMode::live;
  if (s == "record")
    return GatewayMode::record;
  if (s == "replay")
    return GatewayMode::replay;
  throw ValidationError("unknown mode '" + std::string(s) + "' (live|record|replay)");
}

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

RunManifest make_manifest(const std::string &command, const json &config,
                          const std::map<std::string, std::filesystem::path> &datasets) {
  RunManifest m;
  try {
    m.command = command;
    m.seed = config.at("seed").get<std::uint64_t>();
    m.mode = gateway_mode_from_string(config.at("mode").get<std::string>());
    m.fixtures = config.value("fixtures", std::string{});
    m.parallelism = config.at("parallelism").get<std::size_t>();
    m.quality_threshold = config.at("quality_threshold").get<double>();
    m.guard_block = config.at("guard_block").get<std::size_t>();
    m.runs = config.at("runs").get<int>();
    m.awareness_ratio = config.at("awareness_ratio").get<double>();
    if (auto p = config.find("pivot"); p != config.end() && !p->is_null())
      m.pivot = canonical_language(p->get<std::string>());
    m.detect_default = config.value("detect_default", true);
    if (auto a = config.find("args"); a != config.end() && a->is_object())
      m.args = *a;
    for (const auto &[role, ep] : config.at("endpoints").items())
      m.endpoints.emplace(role, ep.get<ModelEndpoint>());
  } catch (const json::exception &e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
  if (m.parallelism == 0)
    throw ValidationError("parallelism must be at least 1");
  if (m.guard_block == 0)
    throw ValidationError("guard_block must be at least 1");
  if (m.mode != GatewayMode::live && m.fixtures.empty())
    throw ValidationError(to_string(m.mode) + " mode needs a fixture store path");

  for (const auto &[name, path] : datasets)
    m.dataset_hashes[name] = file_sha256(path);

  if (auto id = config.find("run_id"); id != config.end() && id->is_string())
    m.run_id = id->get<std::string>();
  else {
    json fingerprint = config;
    fingerprint.erase("mode");
    fingerprint.erase("fixtures");
    fingerprint.erase("parallelism");
    fingerprint["command"] = command;
    fingerprint["datasets"] = m.dataset_hashes;
    m.run_id = sha256_hex(fingerprint.dump()).substr(0, 12);
  }
  if (m.mode != GatewayMode::replay)
    m.timestamps["started_at"] = utc_now();
  return m;
}

const ModelEndpoint &endpoint_for(const RunManifest &m, const std::string &role) {
  auto it = m.endpoints.find(role);
  if (it == m.endpoints.end())
    throw ValidationError("no '" + role + "' endpoint configured");
  validate(it->second);
  return it->second;
}

GatewayOptions gateway_options(const RunManifest &m) {
  GatewayOptions o;
  o.guard_block = m.guard_block;
  o.mode = m.mode;
  o.fixture_store = m.fixtures;
  return o;
}

json to_json(const RunManifest &m) {
  json eps = json::object();
  for (const auto &[role, ep] : m.endpoints)
    eps[role] = ep;
  json j{{"run_id", m.run_id},
         {"command", m.command},
         {"seed", m.seed},
         {"mode", to_string(m.mode)},
         {"fixtures", m.fixtures.string()},
         {"parallelism", m.parallelism},
         {"thresholds", {{"quality", m.quality_threshold}, {"guard_block", m.guard_block}}},
         {"runs", m.runs},
         {"awareness_ratio", m.awareness_ratio},
         {"pivot", m.pivot ? json(m.pivot->name()) : json(nullptr)},
         {"detect_default", m.detect_default},
         {"endpoints", eps},
         {"dataset_hashes", m.dataset_hashes},
         {"tool_version", m.tool_version},
         {"translation_prompt_version", m.translation_prompt_version}};
  if (!m.args.empty())
    j["args"] = m.args;
  if (!m.timestamps.empty())
    j["timestamps"] = m.timestamps;
  return j;
}

RunManifest manifest_from_json(const json &j) {
  RunManifest m;
  try {
    m.run_id = j.at("run_id").get<std::string>();
    m.command = j.value("command", std::string{});
    m.seed = j.value("seed", std::uint64_t{0});
    m.mode = gateway_mode_from_string(j.value("mode", std::string{"live"}));
    m.fixtures = j.value("fixtures", std::string{});
    m.parallelism = j.value("parallelism", std::size_t{1});
    if (auto t = j.find("thresholds"); t != j.end()) {
      m.quality_threshold = t->value("quality", 0.4);
      m.guard_block = t->value("guard_block", kDefaultGuardBlock);
    }
    m.runs = j.value("runs", 3);
    m.awareness_ratio = j.value("awareness_ratio", 1.0);
    if (auto p = j.find("pivot"); p != j.end() && !p->is_null())
      m.pivot = canonical_language(p->get<std::string>());
    m.detect_default = j.value("detect_default", true);
    if (auto eps = j.find("endpoints"); eps != j.end())
      for (const auto &[role, ep] : eps->items())
        m.endpoints.emplace(role, ep.get<ModelEndpoint>());
    m.dataset_hashes = j.value("dataset_hashes", std::map<std::string, std::string>{});
    m.tool_version = j.value("tool_version", std::string{kToolVersion});
    m.translation_prompt_version = j.value("translation_prompt_version", std::string{});
    m.timestamps = j.value("timestamps", std::map<std::string, std::string>{});
    m.args = j.value("args", json::object());
  } catch (const json::exception &e) {
    throw ValidationError(std::string("invalid manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const std::filesystem::path &dir, RunManifest m) {
  if (m.mode != GatewayMode::replay)
    m.timestamps["finished_at"] = utc_now();
  std::filesystem::create_directories(dir);
  write_text_file(dir / "manifest.json", to_json(m).dump(2) + "\n");
}

} // namespace x1

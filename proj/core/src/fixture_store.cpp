#include <filesystem>

#include "x1/gateway.hpp"
#include "x1/jsonl.hpp"

namespace x1 {

namespace {

using nlohmann::json;

json entry_json(const FixtureEntry &e) {
  json j{{"request_id", e.request_id},
         {"raw_text", e.raw_text},
         {"usage",
          {{"prompt_tokens", e.usage.prompt_tokens},
           {"completion_tokens", e.usage.completion_tokens}}}};
  if (e.truncated_by_guard)
    j["truncated_by_guard"] = true;
  if (e.loop)
    j["loop"] = true;
  return j;
}

FixtureEntry entry_from(const json &j) {
  FixtureEntry e;
  e.request_id = j.at("request_id").get<std::string>();
  e.raw_text = j.at("raw_text").get<std::string>();
  if (auto u = j.find("usage"); u != j.end() && u->is_object()) {
    e.usage.prompt_tokens = u->value("prompt_tokens", std::int64_t{0});
    e.usage.completion_tokens = u->value("completion_tokens", std::int64_t{0});
  }
  e.truncated_by_guard = j.value("truncated_by_guard", false);
  e.loop = j.value("loop", false);
  return e;
}

} // namespace

FixtureStore::FixtureStore(std::filesystem::path path) : path_(std::move(path)) {}

FixtureStore::FixtureStore(FixtureStore &&other) noexcept {
  std::lock_guard lock(other.mutex_);
  path_ = std::move(other.path_);
  entries_ = std::move(other.entries_);
  index_ = std::move(other.index_);
}

FixtureStore &FixtureStore::operator=(FixtureStore &&other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    path_ = std::move(other.path_);
    entries_ = std::move(other.entries_);
    index_ = std::move(other.index_);
  }
  return *this;
}

FixtureStore FixtureStore::load(const std::filesystem::path &path) {
  FixtureStore store(path);
  if (!std::filesystem::exists(path))
    return store;
  for_each_jsonl(path, [&](std::size_t line, const json &j) {
    FixtureEntry e;
    try {
      e = entry_from(j);
    } catch (const json::exception &ex) {
      throw SchemaError(path.string(), line, ex.what());
    }
    if (store.index_.contains(e.request_id))
      return;
    store.index_.emplace(e.request_id, store.entries_.size());
    store.entries_.push_back(std::move(e));
  });
  return store;
}

std::optional<FixtureEntry> FixtureStore::find(const std::string &request_id) const {
  std::lock_guard lock(mutex_);
  if (auto it = index_.find(request_id); it != index_.end())
    return entries_[it->second];
  return std::nullopt;
}

std::size_t FixtureStore::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<FixtureEntry> FixtureStore::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

bool FixtureStore::append(const FixtureEntry &entry) {
  std::lock_guard lock(mutex_);
  if (index_.contains(entry.request_id))
    return false;
  if (!path_.empty()) {
    JsonlWriter writer(path_, JsonlWriter::Mode::append);
    writer.write(entry_json(entry));
  }
  index_.emplace(entry.request_id, entries_.size());
  entries_.push_back(entry);
  return true;
}

void record_fixture(const ChatRequest &req, const ChatOutcome &outcome,
                    const std::filesystem::path &store) {
  auto s = FixtureStore::load(store);
  s.append({outcome.request_id.empty() ? request_id(req) : outcome.request_id,
            outcome.raw_text, outcome.usage, outcome.truncated_by_guard, false});
}

} // namespace x1

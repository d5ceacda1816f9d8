#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "x1/error.hpp"
#include "x1/repeat_guard.hpp"
#include "x1/types.hpp"

namespace x1 {

struct ChatRequest {
  ModelEndpoint endpoint;
  std::optional<std::string> system;
  std::string user;
  std::optional<std::string> forced_prefix;
  std::optional<SamplingParams> sampling; ///< overrides endpoint.sampling
  std::uint64_t seed = 0;

  const SamplingParams &effective_sampling() const {
    return sampling ? *sampling : endpoint.sampling;
  }
};

/// Deterministic id over (model, system, user, prefix, sampling, seed).
std::string request_id(const ChatRequest &req);

struct Usage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  friend bool operator==(const Usage &, const Usage &) = default;
};

struct ChatOutcome {
  std::string request_id;
  std::string raw_text; ///< begins with the forced prefix when one was given
  bool truncated_by_guard = false;
  Usage usage;
  std::int64_t latency_ms = 0;
  int attempts = 1;
};

/// Backend failure worth retrying (connection reset, HTTP 429/5xx, ...).
class TransientError : public Error {
public:
  using Error::Error;
};

/// Receives generated text deltas (continuation only, never the forced
/// prefix). Returning false asks the backend to stop generating.
using DeltaSink = std::function<bool(std::string_view delta)>;

class Backend {
public:
  virtual ~Backend() = default;
  /// Streams the continuation of `req` into `sink`. Throws TransientError,
  /// EndpointUnavailable or FixtureMiss.
  virtual Usage stream(const ChatRequest &req, const std::string &id,
                       const DeltaSink &sink) = 0;
};

// --- fixture store -----------------------------------------------------------

struct FixtureEntry {
  std::string request_id;
  std::string raw_text;
  Usage usage;
  bool truncated_by_guard = false;
  /// Mock-only: stream raw_text repeatedly until stopped or max_new_tokens
  /// characters have been produced.
  bool loop = false;
};

/// Append-only JSONL store of `{request_id, raw_text, usage, ...}` rows.
/// The first row for a request id wins; later duplicates are ignored.
class FixtureStore {
public:
  FixtureStore() = default;
  explicit FixtureStore(std::filesystem::path path);
  FixtureStore(FixtureStore &&other) noexcept;
  FixtureStore &operator=(FixtureStore &&other) noexcept;

  static FixtureStore load(const std::filesystem::path &path);

  std::optional<FixtureEntry> find(const std::string &request_id) const;
  std::size_t size() const;
  std::vector<FixtureEntry> entries() const;

  /// Appends to the backing file unless the id is already present.
  /// Returns false for duplicates. Throws IoError.
  bool append(const FixtureEntry &entry);

  const std::filesystem::path &path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::vector<FixtureEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Appends one replayable entry for (req, outcome) to the store at `store`.
void record_fixture(const ChatRequest &req, const ChatOutcome &outcome,
                    const std::filesystem::path &store);

// --- backends ------------------------------------------------------------------

/// Serves fixture entries by request id (mock endpoints and replay mode).
class FixtureBackend : public Backend {
public:
  explicit FixtureBackend(std::shared_ptr<const FixtureStore> store,
                          std::size_t loop_delta_chars = 8);
  Usage stream(const ChatRequest &req, const std::string &id,
               const DeltaSink &sink) override;

private:
  std::shared_ptr<const FixtureStore> store_;
  std::size_t loop_delta_chars_;
};

/// Programmatic mock: a callback maps each request to its full response text.
class ScriptedBackend : public Backend {
public:
  using Script = std::function<std::string(const ChatRequest &)>;
  explicit ScriptedBackend(Script script) : script_(std::move(script)) {}
  Usage stream(const ChatRequest &req, const std::string &id,
               const DeltaSink &sink) override;

private:
  Script script_;
};

/// OpenAI-compatible `/chat/completions` (or `/completions` in completion
/// prefix mode) over HTTP(S) with server-sent-event streaming.
class HttpBackend : public Backend {
public:
  HttpBackend() = default;
  Usage stream(const ChatRequest &req, const std::string &id,
               const DeltaSink &sink) override;

  /// Request body sent for `req`; exposed for inspection and tests.
  static nlohmann::json build_body(const ChatRequest &req);
  /// Extracts the text delta and usage from one SSE `data:` payload.
  /// Returns false for the `[DONE]` sentinel.
  static bool parse_event(std::string_view payload, std::string &delta, Usage &usage,
                          bool &in_reasoning);
};

// --- gateway -------------------------------------------------------------------

enum class GatewayMode { live, record, replay };

struct GatewayOptions {
  std::size_t guard_block = kDefaultGuardBlock;
  int max_attempts = 4;
  std::chrono::milliseconds backoff_base{250};
  std::chrono::milliseconds backoff_cap{8000};
  GatewayMode mode = GatewayMode::live;
  /// Replay source (replay mode) or record destination (record mode).
  std::filesystem::path fixture_store;
};

/// Picks the backend for an endpoint.
using BackendResolver = std::function<std::shared_ptr<Backend>(const ModelEndpoint &)>;

struct BatchItem {
  std::optional<ChatOutcome> outcome;
  std::string error; ///< empty on success
  bool fixture_miss = false;
  bool ok() const noexcept { return outcome.has_value(); }
};

class Gateway {
public:
  /// Default resolution: replay mode serves everything from the fixture
  /// store; otherwise mock endpoints read their own fixture file and all
  /// other roles go over HTTP.
  explicit Gateway(GatewayOptions options = {});
  Gateway(GatewayOptions options, BackendResolver resolver);

  /// Retries TransientError with exponential backoff; applies the repeat
  /// guard to the generated text. Throws EndpointUnavailable, FixtureMiss.
  ChatOutcome complete(const ChatRequest &req) const;

  /// Outcomes in input order; at most `parallelism` requests in flight.
  std::vector<BatchItem> complete_batch(const std::vector<ChatRequest> &reqs,
                                        std::size_t parallelism) const;

  /// Streaming form of complete_batch: `on_item(index, item)` is called in
  /// input order from the calling thread. Completed-but-undelivered items
  /// are bounded by 2 × parallelism. Returns the peak buffered count.
  std::size_t for_each_completion(const std::vector<ChatRequest> &reqs,
                                  std::size_t parallelism,
                                  const std::function<void(std::size_t, BatchItem)> &on_item) const;

  const GatewayOptions &options() const noexcept { return options_; }

  /// Total backend calls issued (attempts included).
  std::size_t backend_calls() const noexcept;

private:
  GatewayOptions options_;
  BackendResolver resolver_;
  std::shared_ptr<FixtureStore> record_store_;
  struct Counters;
  std::shared_ptr<Counters> counters_;
};

} // namespace x1

#include "x1/gateway.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <thread>

#include "x1/jsonl.hpp"
#include "x1/utf8.hpp"

namespace x1 {

struct Gateway::Counters {
  std::atomic<std::size_t> backend_calls{0};
};

std::string request_id(const ChatRequest &req) {
  const nlohmann::json key{
      {"model", req.endpoint.model_name},
      {"system", req.system ? nlohmann::json(*req.system) : nlohmann::json(nullptr)},
      {"user", req.user},
      {"prefix", req.forced_prefix ? nlohmann::json(*req.forced_prefix)
                                   : nlohmann::json(nullptr)},
      {"sampling", req.effective_sampling()},
      {"seed", req.seed},
  };
  return sha256_hex(dump_line(key)).substr(0, 32);
}

namespace {

BackendResolver default_resolver(const GatewayOptions &options) {
  auto http = std::make_shared<HttpBackend>();
  auto cache = std::make_shared<std::map<std::string, std::shared_ptr<Backend>>>();
  auto mutex = std::make_shared<std::mutex>();
  auto fixture_backend = [cache, mutex](const std::filesystem::path &path) {
    std::lock_guard lock(*mutex);
    auto &slot = (*cache)[path.string()];
    if (!slot)
      slot = std::make_shared<FixtureBackend>(
          std::make_shared<const FixtureStore>(FixtureStore::load(path)));
    return slot;
  };
  const auto mode = options.mode;
  const auto store = options.fixture_store;
  return [=](const ModelEndpoint &endpoint) -> std::shared_ptr<Backend> {
    if (mode == GatewayMode::replay)
      return fixture_backend(store);
    if (endpoint.role == EndpointRole::mock)
      return fixture_backend(endpoint.fixture);
    return http;
  };
}

} // namespace

Gateway::Gateway(GatewayOptions options)
    : Gateway(options, default_resolver(options)) {}

Gateway::Gateway(GatewayOptions options, BackendResolver resolver)
    : options_(std::move(options)), resolver_(std::move(resolver)),
      counters_(std::make_shared<Counters>()) {
  if (options_.max_attempts < 1)
    throw ValidationError("max_attempts must be >= 1");
  if (options_.mode == GatewayMode::record) {
    if (options_.fixture_store.empty())
      throw ValidationError("record mode needs a fixture store path");
    record_store_ =
        std::make_shared<FixtureStore>(FixtureStore::load(options_.fixture_store));
  }
  if (options_.mode == GatewayMode::replay && options_.fixture_store.empty())
    throw ValidationError("replay mode needs a fixture store path");
}

std::size_t Gateway::backend_calls() const noexcept {
  return counters_->backend_calls.load();
}

ChatOutcome Gateway::complete(const ChatRequest &req) const {
  const auto id = request_id(req);
  auto backend = resolver_(req.endpoint);
  if (!backend)
    throw EndpointUnavailable("no backend for endpoint " + req.endpoint.model_name);

  const auto start = std::chrono::steady_clock::now();
  const std::string prefix = req.forced_prefix.value_or("");
  std::string last_error;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    RepeatGuard guard(options_.guard_block, utf8::length(prefix));
    guard.feed(std::string_view(prefix));
    std::string text = prefix;
    bool truncated = false;
    try {
      ++counters_->backend_calls;
      const auto usage = backend->stream(req, id, [&](std::string_view delta) {
        if (truncated)
          return false;
        text.append(delta);
        if (guard.feed(delta) == GuardDecision::stop) {
          truncated = true;
          return false;
        }
        return true;
      });
      ChatOutcome out;
      out.request_id = id;
      out.raw_text = std::move(text);
      out.truncated_by_guard = truncated;
      out.usage = usage;
      out.attempts = attempt;
      out.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      if (record_store_)
        record_store_->append({id, out.raw_text, out.usage, out.truncated_by_guard, false});
      return out;
    } catch (const TransientError &e) {
      last_error = e.what();
      if (attempt == options_.max_attempts)
        break;
      auto delay = options_.backoff_base * (1LL << std::min(attempt - 1, 20));
      std::this_thread::sleep_for(std::min<std::chrono::milliseconds>(delay, options_.backoff_cap));
    }
  }
  throw EndpointUnavailable("endpoint " + req.endpoint.model_name + " unavailable after " +
                            std::to_string(options_.max_attempts) +
                            " attempts: " + last_error);
}

std::size_t Gateway::for_each_completion(
    const std::vector<ChatRequest> &reqs, std::size_t parallelism,
    const std::function<void(std::size_t, BatchItem)> &on_item) const {
  if (parallelism < 1)
    throw ValidationError("parallelism must be >= 1");
  const std::size_t n = reqs.size();
  const std::size_t window = 2 * parallelism;

  std::mutex mutex;
  std::condition_variable cv;
  std::size_t next = 0;
  std::size_t delivered = 0;
  std::size_t peak = 0;
  std::map<std::size_t, BatchItem> ready;

  auto run_one = [&](std::size_t i) {
    BatchItem item;
    try {
      item.outcome = complete(reqs[i]);
    } catch (const FixtureMiss &e) {
      item.error = e.what();
      item.fixture_miss = true;
    } catch (const std::exception &e) {
      item.error = e.what();
    }
    return item;
  };

  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return next >= n || next < delivered + window; });
        if (next >= n)
          return;
        i = next++;
      }
      auto item = run_one(i);
      {
        std::lock_guard lock(mutex);
        ready.emplace(i, std::move(item));
        peak = std::max(peak, ready.size());
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> threads;
  const auto nthreads = std::min(parallelism, n);
  threads.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t)
    threads.emplace_back(worker);

  try {
    while (delivered < n) {
      BatchItem item;
      {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return ready.contains(delivered); });
        item = std::move(ready.at(delivered));
        ready.erase(delivered);
      }
      on_item(delivered, std::move(item));
      {
        std::lock_guard lock(mutex);
        ++delivered;
      }
      cv.notify_all();
    }
  } catch (...) {
    {
      std::lock_guard lock(mutex);
      next = n;
    }
    cv.notify_all();
    for (auto &t : threads)
      t.join();
    throw;
  }
  for (auto &t : threads)
    t.join();
  return peak;
}

std::vector<BatchItem> Gateway::complete_batch(const std::vector<ChatRequest> &reqs,
                                               std::size_t parallelism) const {
  std::vector<BatchItem> out(reqs.size());
  for_each_completion(reqs, parallelism,
                      [&](std::size_t i, BatchItem item) { out[i] = std::move(item); });
  return out;
}

} // namespace x1

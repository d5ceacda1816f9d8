#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>

#include "support/test_support.hpp"
#include "x1/error.hpp"
#include "x1/gateway.hpp"
#include "x1/jsonl.hpp"
#include "x1/template.hpp"

using namespace x1;
using nlohmann::json;
using x1::testing::endpoint;
using x1::testing::fast_options;

namespace {

ChatRequest request(std::string user, std::optional<std::string> prefix = std::nullopt) {
  ChatRequest r;
  r.endpoint = endpoint("m");
  r.user = std::move(user);
  r.forced_prefix = std::move(prefix);
  return r;
}

/// Fails with TransientError `failures` times, then answers.
class FlakyBackend : public Backend {
public:
  explicit FlakyBackend(int failures) : failures_(failures) {}
  Usage stream(const ChatRequest &, const std::string &, const DeltaSink &sink) override {
    if (calls_++ < failures_)
      throw TransientError("503");
    sink("ok");
    return {};
  }
  int calls() const { return calls_; }

private:
  int failures_;
  std::atomic<int> calls_{0};
};

} // namespace

TEST_SUITE("gateway") {

TEST_CASE("request id is deterministic and input-sensitive") {
  auto a = request("hello");
  auto b = request("hello");
  CHECK(request_id(a) == request_id(b));
  CHECK(request_id(a).size() == 32);
  b.seed = 1;
  CHECK(request_id(a) != request_id(b));
  b = request("hello", "<think>\n<Thai_start>");
  CHECK(request_id(a) != request_id(b));
  b = a;
  b.sampling = SamplingParams{.temperature = 0.0};
  CHECK(request_id(a) != request_id(b));
}

TEST_CASE("forced prefix is part of raw text") {
  auto gw = testing::scripted_gateway([](const ChatRequest &r) {
    return r.forced_prefix.value_or("") + "\n\nbody\n\n<Thai_end>\n</think>\n\nA";
  });
  const auto out = gw.complete(request("q", build_think_prefix(canonical_language("th"))));
  CHECK(out.raw_text.starts_with("<think>\n<Thai_start>"));
  CHECK(parse_response(out.raw_text).well_formed);
  CHECK_FALSE(out.truncated_by_guard);
}

TEST_CASE("transient errors are retried with backoff") {
  auto flaky = std::make_shared<FlakyBackend>(2);
  Gateway gw(fast_options(), [flaky](const ModelEndpoint &) { return flaky; });
  const auto out = gw.complete(request("q"));
  CHECK(out.raw_text == "ok");
  CHECK(out.attempts == 3);
  CHECK(gw.backend_calls() == 3);
}

TEST_CASE("persistent failure becomes EndpointUnavailable") {
  auto flaky = std::make_shared<FlakyBackend>(100);
  Gateway gw(fast_options(), [flaky](const ModelEndpoint &) { return flaky; });
  CHECK_THROWS_AS(gw.complete(request("q")), EndpointUnavailable);
  CHECK(flaky->calls() == 4);
}

TEST_CASE("guard truncates a looping mock") {
  testing::TempDir dir;
  auto req = request("loop please");
  req.endpoint.role = EndpointRole::mock;
  req.endpoint.fixture = dir / "mock.jsonl";
  {
    JsonlWriter w(req.endpoint.fixture);
    w.write(json{{"request_id", request_id(req)}, {"raw_text", "all work and no play "},
                 {"loop", true}});
  }
  auto opts = fast_options();
  opts.guard_block = 16;
  Gateway gw(opts);
  const auto out = gw.complete(req);
  CHECK(out.truncated_by_guard);
  CHECK(out.raw_text.size() < 200);
  CHECK(out.raw_text.starts_with("all work and no play all work"));
}

TEST_CASE("mock without entry raises FixtureMiss") {
  testing::TempDir dir;
  auto req = request("unknown");
  req.endpoint.role = EndpointRole::mock;
  req.endpoint.fixture = dir / "empty.jsonl";
  write_text_file(req.endpoint.fixture, "");
  Gateway gw(fast_options());
  CHECK_THROWS_AS(gw.complete(req), FixtureMiss);
}

TEST_CASE("record then replay offline with zero live calls") {
  testing::TempDir dir;
  const auto store = dir / "fixtures.jsonl";
  std::atomic<int> live{0};
  auto recorder = testing::scripted_gateway(
      [&](const ChatRequest &r) {
        ++live;
        return "echo " + r.user;
      },
      fast_options(GatewayMode::record, store));
  std::vector<ChatRequest> reqs;
  for (int i = 0; i < 12; ++i)
    reqs.push_back(request("q" + std::to_string(i)));
  const auto recorded = recorder.complete_batch(reqs, 3);
  CHECK(live == 12);
  CHECK(FixtureStore::load(store).size() == 12);

  Gateway replay(fast_options(GatewayMode::replay, store));
  const auto replayed = replay.complete_batch(reqs, 2);
  REQUIRE(replayed.size() == 12);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    REQUIRE(replayed[i].ok());
    CHECK(replayed[i].outcome->raw_text == recorded[i].outcome->raw_text);
  }
  CHECK(live == 12);

  auto missing = request("never recorded");
  CHECK_THROWS_AS(replay.complete(missing), FixtureMiss);
}

TEST_CASE("fixture store keeps the first entry per id") {
  testing::TempDir dir;
  FixtureStore store(dir / "s.jsonl");
  CHECK(store.append({"id1", "first", {}, false, false}));
  CHECK_FALSE(store.append({"id1", "second", {}, false, false}));
  const auto loaded = FixtureStore::load(dir / "s.jsonl");
  CHECK(loaded.size() == 1);
  CHECK(loaded.find("id1")->raw_text == "first");
}

TEST_CASE("batch preserves order and reports per-item errors") {
  auto gw = testing::scripted_gateway([](const ChatRequest &r) -> std::string {
    if (r.user == "bad")
      throw EndpointUnavailable("down");
    return r.user + "!";
  });
  std::vector<ChatRequest> reqs{request("a"), request("bad"), request("c")};
  const auto items = gw.complete_batch(reqs, 2);
  REQUIRE(items.size() == 3);
  CHECK(items[0].outcome->raw_text == "a!");
  CHECK_FALSE(items[1].ok());
  CHECK(items[1].error.find("down") != std::string::npos);
  CHECK(items[2].outcome->raw_text == "c!");
}

TEST_CASE("streaming batch buffers at most twice the parallelism") {
  auto gw = testing::scripted_gateway([](const ChatRequest &r) {
    // Early items are slow so later ones pile up.
    if (r.user.size() < 3)
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    return r.user;
  });
  std::vector<ChatRequest> reqs;
  for (int i = 0; i < 2000; ++i)
    reqs.push_back(request(std::to_string(i)));
  std::size_t next = 0;
  const auto peak = gw.for_each_completion(reqs, 4, [&](std::size_t i, BatchItem item) {
    CHECK(i == next++);
    CHECK(item.ok());
  });
  CHECK(next == 2000);
  CHECK(peak <= 8);
}

TEST_CASE("chat body with forced prefix continues the assistant turn") {
  auto r = request("Q", "<think>\n<Thai_start>");
  r.endpoint.sampling.temperature = 0.6;
  r.seed = 5;
  const auto body = HttpBackend::build_body(r);
  CHECK(body["model"] == "m");
  CHECK(body["stream"] == true);
  CHECK(body["messages"].size() == 2);
  CHECK(body["messages"][1]["role"] == "assistant");
  CHECK(body["messages"][1]["content"] == "<think>\n<Thai_start>");
  CHECK(body["continue_final_message"] == true);
  CHECK(body["add_generation_prompt"] == false);
  CHECK(body["temperature"] == 0.6);
  CHECK(body["max_tokens"] == 32768);
  CHECK(body["seed"] == 5);

  r.endpoint.prefix_mode = PrefixMode::completion;
  const auto comp = HttpBackend::build_body(r);
  CHECK(comp["prompt"] == "Q\n<think>\n<Thai_start>");
  CHECK_FALSE(comp.contains("messages"));
}

TEST_CASE("stream events fold reasoning content into a think block") {
  std::string delta;
  Usage usage;
  bool in_reasoning = false;
  CHECK(HttpBackend::parse_event(R"({"choices":[{"delta":{"reasoning_content":"hmm"}}]})",
                                 delta, usage, in_reasoning));
  CHECK(HttpBackend::parse_event(R"({"choices":[{"delta":{"content":"42"}}]})", delta, usage,
                                 in_reasoning));
  CHECK(HttpBackend::parse_event(R"({"choices":[],"usage":{"prompt_tokens":3,"completion_tokens":4}})",
                                 delta, usage, in_reasoning));
  CHECK_FALSE(HttpBackend::parse_event("[DONE]", delta, usage, in_reasoning));
  CHECK(delta == "<think>\nhmm\n</think>\n\n42");
  CHECK(usage.completion_tokens == 4);
}

TEST_CASE("HTTP backend streams from a local server") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string seen_auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request &req, httplib::Response &res) {
    if (hits++ == 0) {
      res.status = 503;
      return;
    }
    seen_auth = req.get_header_value("Authorization");
    const auto body = json::parse(req.body);
    const std::string word = body["messages"][0]["content"];
    std::string sse;
    for (const auto *piece : {"Hello", ", ", "world"})
      sse += "data: " + json{{"choices", {{{"delta", {{"content", piece}}}}}}}.dump() + "\n\n";
    sse += "data: " + json{{"choices", {{{"delta", {{"content", " " + word}}}}}}}.dump() + "\n\n";
    sse += "data: [DONE]\n\n";
    res.set_content(sse, "text/event-stream");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("X1_TEST_KEY", "secret", 1);
  auto r = request("Q");
  r.endpoint.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/";
  r.endpoint.api_key_env = "X1_TEST_KEY";
  Gateway gw(fast_options());
  const auto out = gw.complete(r);
  server.stop();
  t.join();
  CHECK(out.raw_text == "Hello, world Q");
  CHECK(out.attempts == 2);
  CHECK(seen_auth == "Bearer secret");
}

TEST_CASE("unreachable HTTP endpoint fails after retries") {
  auto r = request("Q");
  r.endpoint.base_url = "http://127.0.0.1:1";
  auto opts = fast_options();
  opts.max_attempts = 2;
  Gateway gw(opts);
  CHECK_THROWS_AS(gw.complete(r), EndpointUnavailable);
}

}

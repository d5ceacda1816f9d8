#include <cstdlib>

#include <httplib.h>

#include "x1/gateway.hpp"
#include "x1/jsonl.hpp"

namespace x1 {

namespace {

using nlohmann::json;

struct ParsedUrl {
  std::string origin; ///< scheme://host[:port]
  std::string path;   ///< path prefix without trailing slash, e.g. "/v1"
};

ParsedUrl split_url(const std::string &base) {
  const auto scheme_end = base.find("://");
  if (scheme_end == std::string::npos)
    throw ValidationError("base_url needs a scheme: '" + base + "'");
  const auto path_begin = base.find('/', scheme_end + 3);
  ParsedUrl u;
  u.origin = base.substr(0, path_begin);
  u.path = path_begin == std::string::npos ? "" : base.substr(path_begin);
  while (!u.path.empty() && u.path.back() == '/')
    u.path.pop_back();
  return u;
}

void apply_sampling(json &body, const SamplingParams &s, std::uint64_t seed) {
  if (s.temperature)
    body["temperature"] = *s.temperature;
  if (s.top_p)
    body["top_p"] = *s.top_p;
  body["max_tokens"] = s.max_new_tokens;
  body["seed"] = seed;
}

} // namespace

json HttpBackend::build_body(const ChatRequest &req) {
  json body{{"model", req.endpoint.model_name}, {"stream", true}};
  body["stream_options"] = {{"include_usage", true}};
  apply_sampling(body, req.effective_sampling(), req.seed);

  if (req.forced_prefix && req.endpoint.prefix_mode == PrefixMode::completion) {
    std::string prompt;
    if (req.system)
      prompt += *req.system + "\n\n";
    prompt += req.user + "\n" + *req.forced_prefix;
    body["prompt"] = prompt;
    return body;
  }

  json messages = json::array();
  if (req.system)
    messages.push_back({{"role", "system"}, {"content", *req.system}});
  messages.push_back({{"role", "user"}, {"content", req.user}});
  if (req.forced_prefix) {
    messages.push_back({{"role", "assistant"}, {"content", *req.forced_prefix}});
    body["continue_final_message"] = true;
    body["add_generation_prompt"] = false;
  }
  body["messages"] = std::move(messages);
  return body;
}

bool HttpBackend::parse_event(std::string_view payload, std::string &delta, Usage &usage,
                              bool &in_reasoning) {
  if (payload == "[DONE]")
    return false;
  const auto j = json::parse(payload, nullptr, false);
  if (j.is_discarded())
    throw TransientError("malformed stream event: " + std::string(payload));
  if (auto u = j.find("usage"); u != j.end() && u->is_object()) {
    usage.prompt_tokens = u->value("prompt_tokens", usage.prompt_tokens);
    usage.completion_tokens = u->value("completion_tokens", usage.completion_tokens);
  }
  auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty())
    return true;
  const auto &choice = (*choices)[0];
  auto text_of = [](const json &obj, const char *key) -> std::string {
    auto it = obj.find(key);
    return it != obj.end() && it->is_string() ? it->get<std::string>() : std::string{};
  };
  if (auto d = choice.find("delta"); d != choice.end()) {
    // Servers that split reasoning into its own field get it folded back
    // into a think block so the template parser sees one stream.
    const auto reasoning = text_of(*d, "reasoning_content");
    const auto content = text_of(*d, "content");
    if (!reasoning.empty()) {
      if (!in_reasoning) {
        delta += "<think>\n";
        in_reasoning = true;
      }
      delta += reasoning;
    }
    if (!content.empty()) {
      if (in_reasoning) {
        delta += "\n</think>\n\n";
        in_reasoning = false;
      }
      delta += content;
    }
  } else {
    delta += text_of(choice, "text");
  }
  return true;
}

Usage HttpBackend::stream(const ChatRequest &req, const std::string &,
                          const DeltaSink &sink) {
  const auto url = split_url(req.endpoint.base_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(30);
  client.set_read_timeout(600);
  client.enable_server_certificate_verification(true);

  httplib::Request http;
  http.method = "POST";
  const bool completion =
      req.forced_prefix && req.endpoint.prefix_mode == PrefixMode::completion;
  http.path = url.path + (completion ? "/completions" : "/chat/completions");
  http.headers.emplace("Content-Type", "application/json");
  http.headers.emplace("Accept", "text/event-stream");
  if (!req.endpoint.api_key_env.empty()) {
    if (const char *key = std::getenv(req.endpoint.api_key_env.c_str()))
      http.headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  http.body = dump_line(build_body(req));

  Usage usage;
  std::string pending;
  bool in_reasoning = false;
  bool stopped = false;
  int status = 0;
  std::string error_body;

  http.response_handler = [&](const httplib::Response &res) {
    status = res.status;
    return true;
  };
  http.content_receiver = [&](const char *data, std::size_t n, std::uint64_t,
                              std::uint64_t) {
    if (status != 200) {
      error_body.append(data, n);
      return true;
    }
    pending.append(data, n);
    std::size_t nl;
    while ((nl = pending.find('\n')) != std::string::npos) {
      std::string line = pending.substr(0, nl);
      pending.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      if (!line.starts_with("data:"))
        continue;
      std::string_view payload(line);
      payload.remove_prefix(5);
      while (payload.starts_with(' '))
        payload.remove_prefix(1);
      std::string delta;
      if (!parse_event(payload, delta, usage, in_reasoning))
        return true;
      if (!delta.empty() && !sink(delta)) {
        stopped = true;
        return false;
      }
    }
    return true;
  };

  httplib::Response res;
  httplib::Error err = httplib::Error::Success;
  const bool ok = client.send(http, res, err);
  if (stopped)
    return usage;
  if (!ok)
    throw TransientError("request to " + req.endpoint.base_url +
                         " failed: " + httplib::to_string(err));
  if (status == 429 || status >= 500)
    throw TransientError("HTTP " + std::to_string(status) + ": " + error_body);
  if (status != 200)
    throw EndpointUnavailable("HTTP " + std::to_string(status) + " from " +
                              req.endpoint.base_url + ": " + error_body);
  if (in_reasoning)
    sink("\n</think>\n\n");
  return usage;
}

} // namespace x1

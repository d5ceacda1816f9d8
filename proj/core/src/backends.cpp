#include <algorithm>

#include "x1/gateway.hpp"
#include "x1/utf8.hpp"

namespace x1 {

namespace {

std::string_view strip_prefix(std::string_view text, const ChatRequest &req) {
  if (req.forced_prefix && text.starts_with(*req.forced_prefix))
    text.remove_prefix(req.forced_prefix->size());
  return text;
}

} // namespace

FixtureBackend::FixtureBackend(std::shared_ptr<const FixtureStore> store,
                               std::size_t loop_delta_chars)
    : store_(std::move(store)), loop_delta_chars_(std::max<std::size_t>(1, loop_delta_chars)) {}

Usage FixtureBackend::stream(const ChatRequest &req, const std::string &id,
                             const DeltaSink &sink) {
  auto entry = store_->find(id);
  if (!entry)
    throw FixtureMiss(id);
  const auto body = strip_prefix(entry->raw_text, req);
  if (!entry->loop) {
    // One delta: replaying a recorded outcome re-checks the guard exactly
    // where the live stream ended.
    if (!body.empty())
      sink(body);
    return entry->usage;
  }
  const auto chars = utf8::decode(body);
  if (chars.empty())
    return entry->usage;
  const auto limit = static_cast<std::size_t>(req.effective_sampling().max_new_tokens);
  std::size_t produced = 0;
  std::size_t pos = 0;
  while (produced < limit) {
    std::u32string delta;
    for (std::size_t k = 0; k < loop_delta_chars_ && produced < limit; ++k, ++produced) {
      delta.push_back(chars[pos]);
      pos = (pos + 1) % chars.size();
    }
    if (!sink(utf8::encode(delta)))
      break;
  }
  return {entry->usage.prompt_tokens, static_cast<std::int64_t>(produced)};
}

Usage ScriptedBackend::stream(const ChatRequest &req, const std::string &,
                              const DeltaSink &sink) {
  const auto text = script_(req);
  const auto body = strip_prefix(text, req);
  if (!body.empty())
    sink(body);
  return {static_cast<std::int64_t>(utf8::length(req.user)),
          static_cast<std::int64_t>(utf8::length(body))};
}

} // namespace x1

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "x1/language.hpp"
#include "x1/types.hpp"

namespace x1 {

struct ParsedResponse {
  std::optional<Language> marker_language;
  std::string trace;
  std::string answer;
  bool well_formed = false;
  friend bool operator==(const ParsedResponse &, const ParsedResponse &) = default;
};

/// `<{name}_start>` / `<{name}_end>`
std::string start_marker(Language lang);
std::string end_marker(Language lang);

/// `<think>\n<{name}_start>\n\n{trace}\n\n<{name}_end>\n</think>\n\n{answer}`.
/// Throws ReservedMarkerInPayload if trace or answer contains a think tag or
/// any language start/end marker.
std::string render_think_response(Language lang, std::string_view trace,
                                  std::string_view answer);

/// Total over any input; never throws. CRLF is normalized to LF first.
///  (a) marked:   <think>\n<X_start>\n\n{trace}\n\n<X_end>\n</think>\n\n{answer}
///  (b) unmarked: <think>\n{trace}\n</think>\n\n{answer}
///  (c) anything without a think block: answer = raw, not well formed.
/// Input that only approximately follows (a)/(b) is parsed best-effort with
/// well_formed = false. Only the first think block is read; the answer is
/// whatever follows the last `</think>`.
ParsedResponse parse_response(std::string_view raw);

/// Forced decoding prefix `<think>\n<{name}_start>`.
std::string build_think_prefix(Language lang);

/// Instruction prefix placed before the question in self-awareness inputs.
inline constexpr std::string_view kAwarenessInstruction =
    "Before answering, decide in which language you should internally think "
    "to reason about it most effectively for question ";

std::string render_awareness_input(std::string_view question);

/// Self-awareness row: output is `<think>\n\n</think>\n\n{chosen}`.
SftRecord render_awareness_record(const Question &q, Language chosen,
                                  std::string_view run_id = {});

/// Parse `raw` into a Trajectory (keeps raw, copies marker/trace/answer).
Trajectory to_trajectory(std::string raw, bool truncated_by_guard = false);

} // namespace x1

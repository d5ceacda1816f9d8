#include "x1/template.hpp"

#include "x1/error.hpp"
#include "x1/utf8.hpp"

namespace x1 {

namespace {

constexpr std::string_view kOpen = "<think>";
constexpr std::string_view kClose = "</think>";

bool contains_reserved(std::string_view s, std::string &which) {
  for (auto tag : {kOpen, kClose}) {
    if (s.find(tag) != std::string_view::npos) {
      which = tag;
      return true;
    }
  }
  for (auto l : all_languages()) {
    for (const auto &m : {start_marker(l), end_marker(l)}) {
      if (s.find(m) != std::string_view::npos) {
        which = m;
        return true;
      }
    }
  }
  return false;
}

// Recognizes "<Name_start>" at the front of `s`; returns the language and the
// marker length.
std::optional<std::pair<Language, std::size_t>> leading_start_marker(std::string_view s) {
  if (!s.starts_with('<'))
    return std::nullopt;
  auto close = s.find('>');
  if (close == std::string_view::npos)
    return std::nullopt;
  auto inner = s.substr(1, close - 1);
  constexpr std::string_view suffix = "_start";
  if (!inner.ends_with(suffix))
    return std::nullopt;
  auto name = inner.substr(0, inner.size() - suffix.size());
  for (auto l : all_languages())
    if (l.name() == name)
      return std::make_pair(l, close + 1);
  return std::nullopt;
}

std::string_view trim_newlines(std::string_view s) {
  auto b = s.find_first_not_of("\n \t");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of("\n \t");
  return s.substr(b, e - b + 1);
}

// Splits a think-block body into marker / trace. `exact` reports whether the
// body followed the marked grammar byte for byte.
void parse_block(std::string_view body, ParsedResponse &out, bool &exact) {
  auto marker = leading_start_marker(body);
  if (!marker) {
    out.trace = std::string(body);
    return;
  }
  const auto [lang, mlen] = *marker;
  out.marker_language = lang;
  const auto end = end_marker(lang);
  const std::string head = "\n\n";
  const std::string tail = "\n\n" + end;
  if (body.size() >= mlen + head.size() + tail.size() &&
      body.substr(mlen, head.size()) == head && body.ends_with(tail)) {
    out.trace = std::string(
        body.substr(mlen + head.size(), body.size() - mlen - head.size() - tail.size()));
    return;
  }
  exact = false;
  auto rest = body.substr(mlen);
  if (auto e = rest.rfind(end); e != std::string_view::npos)
    rest = rest.substr(0, e);
  out.trace = std::string(trim_newlines(rest));
}

} // namespace

std::string start_marker(Language lang) { return "<" + lang.name() + "_start>"; }
std::string end_marker(Language lang) { return "<" + lang.name() + "_end>"; }

std::string render_think_response(Language lang, std::string_view trace,
                                  std::string_view answer) {
  std::string which;
  if (contains_reserved(trace, which))
    throw ReservedMarkerInPayload("trace contains reserved marker " + which);
  if (contains_reserved(answer, which))
    throw ReservedMarkerInPayload("answer contains reserved marker " + which);
  std::string out;
  out.reserve(trace.size() + answer.size() + 64);
  out += "<think>\n";
  out += start_marker(lang);
  out += "\n\n";
  out += trace;
  out += "\n\n";
  out += end_marker(lang);
  out += "\n</think>\n\n";
  out += answer;
  return out;
}

ParsedResponse parse_response(std::string_view raw_in) {
  const std::string raw = utf8::normalize_newlines(raw_in);
  ParsedResponse out;
  const auto open = raw.find(kOpen);
  const auto close = raw.find(kClose);
  if (open == std::string::npos && close == std::string::npos) {
    out.answer = raw;
    return out;
  }

  bool exact = true;
  std::string_view view(raw);

  if (open == std::string::npos || close < open) {
    // Closing tag without an opening one (prompt-side <think>).
    exact = false;
    parse_block(trim_newlines(view.substr(0, close)), out, exact);
  } else if (close == std::string::npos) {
    // Unterminated block, e.g. a truncated generation.
    exact = false;
    auto body = view.substr(open + kOpen.size());
    if (body.starts_with('\n'))
      body.remove_prefix(1);
    parse_block(body, out, exact);
    return out;
  } else {
    if (open != 0)
      exact = false;
    const auto body_begin = open + kOpen.size() + 1;
    const bool skeleton = raw.compare(open + kOpen.size(), 1, "\n") == 0 &&
                          close > body_begin && raw[close - 1] == '\n';
    if (skeleton) {
      parse_block(view.substr(body_begin, close - 1 - body_begin), out, exact);
    } else {
      exact = false;
      parse_block(trim_newlines(view.substr(open + kOpen.size(), close - open - kOpen.size())),
                  out, exact);
    }
    if (raw.find(kOpen, open + kOpen.size()) != std::string::npos)
      exact = false;
  }

  const auto last_close = raw.rfind(kClose);
  auto after = view.substr(last_close + kClose.size());
  if (after.starts_with("\n\n"))
    after.remove_prefix(2);
  else
    exact = false;
  if (last_close != close)
    exact = false;
  out.answer = std::string(after);
  out.well_formed = exact;
  return out;
}

std::string build_think_prefix(Language lang) {
  return "<think>\n" + start_marker(lang);
}

std::string render_awareness_input(std::string_view question) {
  std::string s(kAwarenessInstruction);
  s += question;
  s += "\n\nThinking Language:";
  return s;
}

SftRecord render_awareness_record(const Question &q, Language chosen,
                                  std::string_view run_id) {
  SftRecord r;
  r.input = render_awareness_input(q.text);
  r.output = "<think>\n\n</think>\n\n" + chosen.name();
  r.meta.question_id = q.id;
  r.meta.thinking_language = chosen;
  r.meta.scenario = q.scenario();
  r.meta.stage = Stage::step2;
  r.meta.run_id = std::string(run_id);
  return r;
}

Trajectory to_trajectory(std::string raw, bool truncated_by_guard) {
  auto parsed = parse_response(raw);
  Trajectory t;
  // A marker only counts once the block is closed by its end marker.
  if (parsed.marker_language &&
      raw.find(end_marker(*parsed.marker_language)) != std::string::npos)
    t.thinking_language = parsed.marker_language;
  t.trace = std::move(parsed.trace);
  t.answer = std::move(parsed.answer);
  t.raw = std::move(raw);
  t.truncated_by_guard = truncated_by_guard;
  return t;
}

} // namespace x1

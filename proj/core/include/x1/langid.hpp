#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "x1/language.hpp"
#include "x1/types.hpp"

namespace x1 {

class JsonLinePlugin;

enum class DetectMethod { script_heuristic, external };

struct LangGuess {
  Language language;
  double confidence = 0.0; ///< in [0, 1]
  DetectMethod method = DetectMethod::script_heuristic;
};

/// Deterministic built-in detector. Scripts used by a single language in the
/// closed set resolve by script; Cyrillic and Arabic script resolve by
/// letter markers; Latin script by a character-trigram model. Throws
/// Indeterminate for text without any letters.
LangGuess detect_language(std::string_view text);

/// Splits after . ! ? (when followed by whitespace or end of text), after
/// 。！？؟। unconditionally, and at newlines. Segments are trimmed; empty
/// segments are dropped.
std::vector<std::string> segment_sentences(std::string_view text);

struct SentenceSpan {
  std::size_t begin; ///< byte offsets into the input
  std::size_t end;
};
std::vector<SentenceSpan> segment_sentence_spans(std::string_view text);

struct MixingProfile {
  std::size_t sentence_count = 0;
  Language primary_language;
  std::size_t mixed_sentences = 0;
  double mixing_rate = 0.0;
};

struct ComplianceFlags {
  bool thinking = false;
  bool answer = false;
  bool both = false;
};

/// Detector front-end: built-in heuristics, optionally overridden by an
/// external process speaking `{"text": ...}` → `{"language": ..., "confidence": ...}`.
class LanguageDetector {
public:
  LanguageDetector();
  explicit LanguageDetector(std::shared_ptr<JsonLinePlugin> external);

  LangGuess detect(std::string_view text) const;
  /// nullopt instead of Indeterminate.
  std::optional<LangGuess> try_detect(std::string_view text) const;

  MixingProfile mixing_profile(std::string_view trace, Language primary) const;

  /// Numerals-only answers are language-neutral and count as compliant; an
  /// empty trace or answer never does.
  ComplianceFlags compliance_flags(const Trajectory &traj, Language required_think,
                                   Language prompt_lang) const;

private:
  std::shared_ptr<JsonLinePlugin> external_;
};

MixingProfile mixing_profile(std::string_view trace, Language primary);
ComplianceFlags compliance_flags(const Trajectory &traj, Language required_think,
                                 Language prompt_lang);

namespace detail {
struct SeedText {
  const char *language;
  const char *text;
};
/// Seed corpora for the Latin-script trigram model.
std::span<const SeedText> latin_seed_corpora();
} // namespace detail

} // namespace x1

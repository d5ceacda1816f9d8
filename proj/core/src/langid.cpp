#include "x1/langid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "x1/error.hpp"
#include "x1/plugin.hpp"
#include "x1/utf8.hpp"

namespace x1 {

namespace {

enum class Script {
  latin,
  greek,
  cyrillic,
  hebrew,
  arabic,
  devanagari,
  bengali,
  thai,
  hangul,
  cjk, // Han and kana together; kana decides Japanese vs Chinese
  count,
};

bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

bool is_kana(char32_t c) {
  return in(c, 0x3040, 0x309F) || in(c, 0x30A0, 0x30FF) || in(c, 0x31F0, 0x31FF) ||
         in(c, 0xFF66, 0xFF9F);
}

std::optional<Script> script_of(char32_t c) {
  if (in(c, 'a', 'z') || in(c, 'A', 'Z') || (in(c, 0x00C0, 0x024F) && c != 0xD7 && c != 0xF7) ||
      in(c, 0x1E00, 0x1EFF))
    return Script::latin;
  if (in(c, 0x0370, 0x03FF) || in(c, 0x1F00, 0x1FFF))
    return Script::greek;
  if (in(c, 0x0400, 0x052F))
    return Script::cyrillic;
  if (in(c, 0x05D0, 0x05EA) || in(c, 0x05F0, 0x05F2))
    return Script::hebrew;
  if (in(c, 0x0620, 0x064A) || in(c, 0x066E, 0x06D3) || in(c, 0x06FA, 0x06FF) ||
      in(c, 0x0750, 0x077F) || in(c, 0xFB50, 0xFDFF) || in(c, 0xFE70, 0xFEFF))
    return Script::arabic;
  if (in(c, 0x0900, 0x0963) || in(c, 0x0971, 0x097F))
    return Script::devanagari;
  if (in(c, 0x0980, 0x09E3) || in(c, 0x09F0, 0x09FF))
    return Script::bengali;
  if (in(c, 0x0E01, 0x0E4E))
    return Script::thai;
  if (in(c, 0xAC00, 0xD7AF) || in(c, 0x1100, 0x11FF) || in(c, 0x3130, 0x318F))
    return Script::hangul;
  if (is_kana(c) || in(c, 0x4E00, 0x9FFF) || in(c, 0x3400, 0x4DBF) ||
      in(c, 0xF900, 0xFAFF) || in(c, 0x20000, 0x2FA1F))
    return Script::cjk;
  return std::nullopt;
}

char32_t latin_lower(char32_t c) {
  if (in(c, 'A', 'Z'))
    return c + 32;
  if (in(c, 0x00C0, 0x00DE) && c != 0xD7)
    return c + 0x20;
  if (c == 0x0130)
    return U'i';
  if ((in(c, 0x0100, 0x0137) || in(c, 0x014A, 0x0177) || in(c, 0x1E00, 0x1EFF)) && c % 2 == 0)
    return c + 1;
  if (in(c, 0x0139, 0x0148) && c % 2 == 1)
    return c + 1;
  if (c == 0x0178)
    return 0xFF;
  if (in(c, 0x0179, 0x017E) && c % 2 == 1)
    return c + 1;
  return c;
}

using Trigram = std::uint64_t;

Trigram pack(char32_t a, char32_t b, char32_t c) {
  return (static_cast<Trigram>(a) << 42) | (static_cast<Trigram>(b) << 21) | c;
}

// Lowercased letters with every non-letter run collapsed to one space,
// padded with spaces on both ends.
std::u32string latin_normalize(std::u32string_view text) {
  std::u32string out = U" ";
  for (char32_t c : text) {
    auto s = script_of(c);
    if (s == Script::latin) {
      out.push_back(latin_lower(c));
    } else if (out.back() != U' ') {
      out.push_back(U' ');
    }
  }
  if (out.back() != U' ')
    out.push_back(U' ');
  return out;
}

std::vector<Trigram> trigrams(std::u32string_view norm) {
  std::vector<Trigram> out;
  for (std::size_t i = 0; i + 2 < norm.size(); ++i)
    out.push_back(pack(norm[i], norm[i + 1], norm[i + 2]));
  return out;
}

struct LatinModel {
  struct Profile {
    Language language;
    std::unordered_map<Trigram, double> counts;
    double total = 0;
  };
  std::vector<Profile> profiles;
  double vocabulary = 1;
};

const LatinModel &latin_model() {
  static const LatinModel model = [] {
    LatinModel m;
    std::unordered_map<Trigram, int> vocab;
    for (const auto &seed : detail::latin_seed_corpora()) {
      LatinModel::Profile p{canonical_language(seed.language), {}, 0};
      for (auto t : trigrams(latin_normalize(utf8::decode(seed.text)))) {
        p.counts[t] += 1;
        p.total += 1;
        vocab[t] = 1;
      }
      m.profiles.push_back(std::move(p));
    }
    m.vocabulary = static_cast<double>(vocab.size());
    return m;
  }();
  return model;
}

constexpr double kSmoothing = 0.5;

LangGuess classify_latin(std::u32string_view text, double share) {
  const auto &model = latin_model();
  const auto grams = trigrams(latin_normalize(text));
  std::vector<double> scores;
  scores.reserve(model.profiles.size());
  for (const auto &p : model.profiles) {
    const double denom = std::log(p.total + kSmoothing * model.vocabulary);
    double s = 0;
    for (auto t : grams) {
      auto it = p.counts.find(t);
      s += std::log((it == p.counts.end() ? 0.0 : it->second) + kSmoothing) - denom;
    }
    scores.push_back(s);
  }
  // Highest score wins; ties resolve to the earlier language in list order.
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best] ||
        (scores[i] == scores[best] &&
         model.profiles[i].language < model.profiles[best].language))
      best = i;
  }
  double second = -INFINITY;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (i != best)
      second = std::max(second, scores[i]);
  const double margin = scores[best] - second;
  return {model.profiles[best].language, share * (1.0 - std::exp(-margin)),
          DetectMethod::script_heuristic};
}

std::size_t count_of(std::u32string_view text, std::u32string_view set) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [&](char32_t c) {
    return set.find(c) != std::u32string_view::npos;
  }));
}

Language resolve_cyrillic(std::u32string_view text) {
  const auto uk = count_of(text, U"іїєґІЇЄҐ");
  const auto ru = count_of(text, U"ыэёЫЭЁ");
  const auto bg = count_of(text, U"ъЪ");
  if (uk > 0 && uk >= ru)
    return canonical_language("uk");
  if (ru > 0)
    return canonical_language("ru");
  if (bg > 0)
    return canonical_language("bg");
  return canonical_language("ru");
}

Language resolve_arabic(std::u32string_view text) {
  const auto urdu = count_of(text, U"ٹڈڑںےہھ");
  const auto arabic = count_of(text, U"ةيكىأإ");
  return canonical_language(urdu > arabic ? "ur" : "ar");
}

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == 0x3000 || c == 0xA0;
}

} // namespace

LangGuess detect_language(std::string_view text_utf8) {
  const auto text = utf8::decode(text_utf8);
  std::array<std::size_t, static_cast<std::size_t>(Script::count)> counts{};
  std::size_t letters = 0;
  std::size_t kana = 0;
  for (char32_t c : text) {
    if (auto s = script_of(c)) {
      ++counts[static_cast<std::size_t>(*s)];
      ++letters;
      if (is_kana(c))
        ++kana;
    }
  }
  if (letters == 0)
    throw Indeterminate();

  // Majority script; equal counts go to the earlier script in enum order.
  std::size_t top = 0;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] > counts[top])
      top = i;
  const double share = static_cast<double>(counts[top]) / static_cast<double>(letters);
  const auto script = static_cast<Script>(top);

  auto guess = [&](const char *code) {
    return LangGuess{canonical_language(code), share, DetectMethod::script_heuristic};
  };
  switch (script) {
  case Script::latin:
    return classify_latin(text, share);
  case Script::greek:
    return guess("el");
  case Script::cyrillic:
    return {resolve_cyrillic(text), share, DetectMethod::script_heuristic};
  case Script::hebrew:
    return guess("he");
  case Script::arabic:
    return {resolve_arabic(text), share, DetectMethod::script_heuristic};
  case Script::devanagari:
    return guess("hi");
  case Script::bengali:
    return guess("bn");
  case Script::thai:
    return guess("th");
  case Script::hangul:
    return guess("ko");
  case Script::cjk:
    return guess(kana > 0 ? "ja" : "zh");
  case Script::count:
    break;
  }
  throw Indeterminate();
}

std::vector<SentenceSpan> segment_sentence_spans(std::string_view text) {
  static constexpr std::u32string_view kAlways = U"。！？؟।\n";
  static constexpr std::u32string_view kSpaced = U".!?";

  const auto indexed = utf8::decode_indexed(text);
  const auto &chars = indexed.chars;
  const auto &offsets = indexed.offsets;

  std::vector<SentenceSpan> spans;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(chars[b]))
      ++b;
    while (e > b && is_space(chars[e - 1]))
      --e;
    if (b < e)
      spans.push_back({offsets[b], offsets[e]});
  };

  const std::size_t n = chars.size();
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char32_t c = chars[i];
    bool split = false;
    std::size_t end = i + 1;
    if (kAlways.find(c) != std::u32string_view::npos) {
      split = true;
    } else if (kSpaced.find(c) != std::u32string_view::npos) {
      // Absorb runs like "?!" or "..." before deciding.
      while (end < n && kSpaced.find(chars[end]) != std::u32string_view::npos)
        ++end;
      split = end == n || is_space(chars[end]);
    }
    if (split) {
      emit(start, end);
      start = end;
      i = end - 1;
    }
  }
  emit(start, n);
  return spans;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> out;
  for (const auto &s : segment_sentence_spans(text))
    out.emplace_back(text.substr(s.begin, s.end - s.begin));
  return out;
}

LanguageDetector::LanguageDetector() = default;

LanguageDetector::LanguageDetector(std::shared_ptr<JsonLinePlugin> external)
    : external_(std::move(external)) {}

LangGuess LanguageDetector::detect(std::string_view text) const {
  if (external_) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
      throw Indeterminate();
    const auto reply = external_->request({{"text", std::string(text)}});
    auto lang = reply.find("language");
    if (lang != reply.end() && lang->is_string()) {
      try {
        const double conf = std::clamp(reply.value("confidence", 1.0), 0.0, 1.0);
        return {canonical_language(lang->get<std::string>()), conf, DetectMethod::external};
      } catch (const UnknownLanguage &) {
        // Outside the closed set: fall back to the built-in heuristics.
      }
    }
  }
  return detect_language(text);
}

std::optional<LangGuess> LanguageDetector::try_detect(std::string_view text) const {
  try {
    return detect(text);
  } catch (const Indeterminate &) {
    return std::nullopt;
  }
}

MixingProfile LanguageDetector::mixing_profile(std::string_view trace,
                                               Language primary) const {
  MixingProfile p{0, primary, 0, 0.0};
  for (const auto &sentence : segment_sentences(trace)) {
    ++p.sentence_count;
    if (auto g = try_detect(sentence); g && g->language != primary)
      ++p.mixed_sentences;
  }
  if (p.sentence_count > 0)
    p.mixing_rate =
        static_cast<double>(p.mixed_sentences) / static_cast<double>(p.sentence_count);
  return p;
}

ComplianceFlags LanguageDetector::compliance_flags(const Trajectory &traj,
                                                   Language required_think,
                                                   Language prompt_lang) const {
  auto matches = [&](const std::string &text, Language want) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
      return false;
    auto g = try_detect(text);
    return !g || g->language == want;
  };
  ComplianceFlags f;
  f.thinking = matches(traj.trace, required_think);
  f.answer = matches(traj.answer, prompt_lang);
  f.both = f.thinking && f.answer;
  return f;
}

MixingProfile mixing_profile(std::string_view trace, Language primary) {
  return LanguageDetector().mixing_profile(trace, primary);
}

ComplianceFlags compliance_flags(const Trajectory &traj, Language required_think,
                                 Language prompt_lang) {
  return LanguageDetector().compliance_flags(traj, required_think, prompt_lang);
}

} // namespace x1

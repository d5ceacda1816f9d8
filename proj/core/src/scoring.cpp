#include "x1/scoring.hpp"

#include <algorithm>
#include <cctype>

#include "x1/error.hpp"
#include "x1/template.hpp"
#include "x1/utf8.hpp"

namespace x1 {

namespace {

std::optional<char32_t> ascii_digit(char32_t c) {
  static constexpr char32_t kZeros[] = {0x0660, 0x06F0, 0x0966, 0x09E6, 0x0E50, 0xFF10};
  if (c >= U'0' && c <= U'9')
    return c;
  for (char32_t z : kZeros)
    if (c >= z && c <= z + 9)
      return U'0' + (c - z);
  return std::nullopt;
}

bool is_group_separator(char32_t c) {
  return c == U',' || c == U' ' || c == 0x060C || c == 0x066C || c == 0x00A0 ||
         c == 0x202F || c == 0x2009;
}

// Identifier-style prefixes such as "x2" or "v3" only occur in alphabetic
// scripts written with spaces; CJK text runs straight into numbers.
bool is_letter_like(char32_t c) {
  if (c < 0x80)
    return std::isalpha(static_cast<int>(c)) || c == U'_';
  return c >= 0xC0 && c < 0x530 && c != 0xD7 && c != 0xF7;
}

// Folds digits to ASCII and the Arabic decimal separator to '.'.
std::u32string fold_digits(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (auto d = ascii_digit(c))
      out.push_back(*d);
    else if (c == 0x066B)
      out.push_back(U'.');
    else
      out.push_back(c);
  }
  return out;
}

bool digit(char32_t c) { return c >= U'0' && c <= U'9'; }

// Number of ASCII digits starting at i.
std::size_t digit_run(std::u32string_view s, std::size_t i) {
  std::size_t k = 0;
  while (i + k < s.size() && digit(s[i + k]))
    ++k;
  return k;
}

} // namespace

Decimal extract_numeric_answer(std::string_view text) {
  const auto parsed = parse_response(text);
  const auto segment = fold_digits(utf8::decode(parsed.answer));
  std::optional<std::string> last;

  for (std::size_t i = 0; i < segment.size();) {
    if (!digit(segment[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    std::string number;
    auto run = digit_run(segment, i);
    for (std::size_t k = 0; k < run; ++k)
      number.push_back(static_cast<char>(segment[i + k]));
    i += run;
    // Grouped thousands: separator followed by exactly three digits.
    while (i + 1 < segment.size() && is_group_separator(segment[i]) &&
           digit_run(segment, i + 1) == 3) {
      for (std::size_t k = 1; k <= 3; ++k)
        number.push_back(static_cast<char>(segment[i + k]));
      i += 4;
    }
    if (i + 1 < segment.size() && segment[i] == U'.' && digit(segment[i + 1])) {
      number.push_back('.');
      ++i;
      run = digit_run(segment, i);
      for (std::size_t k = 0; k < run; ++k)
        number.push_back(static_cast<char>(segment[i + k]));
      i += run;
    }
    const bool preceded_by_letter = begin > 0 && is_letter_like(segment[begin - 1]);
    if (preceded_by_letter)
      continue;
    const bool negative = begin > 0 && (segment[begin - 1] == U'-' || segment[begin - 1] == 0x2212) &&
                          (begin == 1 || !digit(segment[begin - 2]));
    last = (negative ? "-" : "") + number;
  }
  if (!last)
    throw NoNumberFound();
  return Decimal::from_string(*last);
}

Judgment score_math(std::string_view pred_answer_text, const GoldAnswer &gold) {
  if (gold.kind != GoldAnswer::Kind::numeric || !gold.numeric_value)
    throw ValidationError("score_math requires a numeric gold answer");
  Judgment j;
  j.method = JudgeMethod::math_exact;
  try {
    const auto predicted = extract_numeric_answer(pred_answer_text);
    j.score = predicted == *gold.numeric_value ? 10.0 : 0.0;
    j.rationale = "extracted " + predicted.to_string();
  } catch (const NoNumberFound &) {
    j.score = 0.0;
    j.rationale = "no extractable number";
  }
  return j;
}

std::optional<char> extract_choice_label(std::string_view text_in) {
  const std::string text = parse_response(text_in).answer;
  auto is_label = [](char c) { return c >= 'A' && c <= 'D'; };
  auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  auto standalone = [&](std::size_t i) {
    return (i == 0 || !alnum(text[i - 1])) && (i + 1 >= text.size() || !alnum(text[i + 1]));
  };

  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (std::string_view cue : {"answer is", "answer:", "option", "choice"}) {
    auto pos = lower.find(cue);
    if (pos == std::string::npos)
      continue;
    std::size_t i = pos + cue.size();
    while (i < text.size() && (text[i] == ' ' || text[i] == '(' || text[i] == '*' ||
                               text[i] == ':' || text[i] == '['))
      ++i;
    if (i < text.size()) {
      const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
      if (is_label(c) && standalone(i))
        return c;
    }
  }
  for (std::size_t i = 0; i + 2 < text.size() + 1; ++i) {
    if (text[i] == '(' && i + 2 < text.size() && is_label(text[i + 1]) && text[i + 2] == ')')
      return text[i + 1];
  }
  for (std::size_t i = 0; i < text.size(); ++i)
    if (is_label(text[i]) && standalone(i))
      return text[i];
  auto b = text.find_first_not_of(" \t\n().*");
  auto e = text.find_last_not_of(" \t\n().*");
  if (b != std::string::npos && b == e) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[b])));
    if (is_label(c))
      return c;
  }
  return std::nullopt;
}

bool choice_correct(std::string_view answer_text, const GoldAnswer &gold) {
  if (gold.kind != GoldAnswer::Kind::choice_label || gold.label.empty())
    throw ValidationError("choice_correct requires a choice-label gold answer");
  const auto label = extract_choice_label(answer_text);
  return label && std::toupper(static_cast<unsigned char>(*label)) ==
                      std::toupper(static_cast<unsigned char>(gold.label.front()));
}

std::string render_culture_judge_prompt(std::string_view question,
                                        std::string_view knowledge,
                                        std::string_view response) {
  std::string p;
  p += "You will be given a culture-related question, a related cultural knowledge and a "
       "response from an agent.\n\n";
  p += "Your task is to provide a 'total rating' scoring how well the response from an "
       "agent answers the culture-related question and entails the related cultural "
       "knowledge.\n\n";
  p += "Give your answer as a float on a scale of 0 to 10, where 0 means that the response "
       "from agent is not helpful at all, and 10 means that the answer completely and "
       "helpfully addresses the question.\n\n";
  p += "Your output should be a float score only.\n\n";
  p += "Question: ";
  p += question;
  p += "\n\nCultural Knowledge: ";
  p += knowledge;
  p += "\n\nResponse: ";
  p += response;
  p += "\n\nTotal rating (a float on a scale of 0 to 10): ";
  return p;
}

std::optional<double> parse_judge_score(std::string_view reply_in) {
  std::string reply = parse_response(reply_in).answer;
  // Judges sometimes echo the rating header; its "0 to 10" is not a score.
  for (std::string_view echo : {"(a float on a scale of 0 to 10)", "scale of 0 to 10",
                                "0-10", "0 to 10"}) {
    for (auto pos = reply.find(echo); pos != std::string::npos; pos = reply.find(echo))
      reply.erase(pos, echo.size());
  }
  for (std::size_t i = 0; i < reply.size(); ++i) {
    const bool starts = std::isdigit(static_cast<unsigned char>(reply[i])) ||
                        (reply[i] == '.' && i + 1 < reply.size() &&
                         std::isdigit(static_cast<unsigned char>(reply[i + 1])));
    if (!starts)
      continue;
    std::size_t j = i;
    while (j < reply.size() &&
           (std::isdigit(static_cast<unsigned char>(reply[j])) || reply[j] == '.'))
      ++j;
    auto token = reply.substr(i, j - i);
    while (!token.empty() && token.back() == '.')
      token.pop_back();
    if (auto d = Decimal::parse(token)) {
      double v = d->to_double();
      if (i > 0 && reply[i - 1] == '-')
        v = 0.0;
      return std::clamp(v, 0.0, 10.0);
    }
    i = j;
  }
  return std::nullopt;
}

ChatRequest judge_request(const ModelEndpoint &judge, std::string prompt,
                          std::uint64_t seed) {
  ChatRequest req;
  req.endpoint = judge;
  req.user = std::move(prompt);
  SamplingParams s = judge.sampling;
  s.temperature = 0.0;
  req.sampling = s;
  req.seed = seed;
  return req;
}

Judgment score_culture(const Gateway &gateway, const ModelEndpoint &judge,
                       const Question &q, std::string_view response,
                       std::uint64_t seed) {
  if (!q.culture_knowledge)
    throw ValidationError("question " + q.id + " has no cultural knowledge");
  const auto prompt = render_culture_judge_prompt(q.text, *q.culture_knowledge, response);
  std::string last_reply;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto text = attempt == 0 ? prompt
                             : prompt + "\n\nReply with a single number between 0 and 10.";
    const auto outcome = gateway.complete(judge_request(judge, std::move(text), seed));
    last_reply = outcome.raw_text;
    if (auto score = parse_judge_score(last_reply)) {
      Judgment j;
      j.score = *score;
      j.method = JudgeMethod::culture_judge;
      j.judge_model = judge.model_name;
      return j;
    }
  }
  throw JudgeUnparseable("judge reply for " + q.id + " has no score: " + last_reply);
}

} // namespace x1

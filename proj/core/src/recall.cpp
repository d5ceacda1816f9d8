#include "x1/recall.hpp"

#include <cctype>

#include "x1/error.hpp"
#include "x1/scoring.hpp"
#include "x1/template.hpp"

namespace x1 {

using nlohmann::json;

std::string render_recall_identification_prompt(std::string_view question,
                                                std::string_view answer,
                                                std::string_view reasoning) {
  std::string p =
      "Given the following QA pair, I will provide you with my reasoning process.\n"
      "Your task is to determine whether my reasoning includes any recall of cultural norms "
      "that directly support or justify the Golden Answer.\n"
      "If such culturally relevant recall exists, extract only the portions that are directly "
      "tied to the Golden Answer and return them in a Python list.\n\n";
  p += "Question: ";
  p += question;
  p += "\n\nGolden Answer: ";
  p += answer;
  p += "\n\nReasoning Process: ";
  p += reasoning;
  return p;
}

std::string render_recall_verification_prompt(std::string_view question,
                                              std::string_view answer,
                                              std::string_view norm) {
  std::string p =
      "Given the following QA pair, I will provide you with a cultural statement.\n"
      "Your task is to determine whether this statement provides a decisive and "
      "indispensable contribution to arriving at the Golden Answer.\n"
      "Mere relevance or weak association does not count.\n"
      "Return only True or False.\n\n";
  p += "Question: ";
  p += question;
  p += "\n\nGolden Answer: ";
  p += answer;
  p += "\n\nCultural Statement: ";
  p += norm;
  return p;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n`");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n`");
  return std::string(s.substr(b, e - b + 1));
}

// Reads a quoted literal starting at s[i] (the quote). Advances i past it.
std::optional<std::string> read_literal(std::string_view s, std::size_t &i) {
  const char quote = s[i++];
  std::string out;
  while (i < s.size()) {
    char c = s[i++];
    if (c == quote)
      return out;
    if (c == '\\' && i < s.size()) {
      char n = s[i++];
      switch (n) {
      case 'n':
        out += '\n';
        break;
      case 't':
        out += '\t';
        break;
      default:
        out += n;
      }
      continue;
    }
    out += c;
  }
  return std::nullopt;
}

} // namespace

std::optional<std::vector<std::string>> parse_python_string_list(std::string_view reply_in) {
  const std::string reply = trim(parse_response(reply_in).answer);
  if (reply == "None" || reply == "none")
    return std::vector<std::string>{};
  for (std::size_t open = reply.find('['); open != std::string::npos;
       open = reply.find('[', open + 1)) {
    std::vector<std::string> items;
    std::size_t i = open + 1;
    bool ok = false;
    while (i < reply.size()) {
      while (i < reply.size() && std::isspace(static_cast<unsigned char>(reply[i])))
        ++i;
      if (i >= reply.size())
        break;
      if (reply[i] == ']') {
        ok = true;
        break;
      }
      if (reply[i] != '\'' && reply[i] != '"')
        break;
      auto lit = read_literal(reply, i);
      if (!lit)
        break;
      items.push_back(std::move(*lit));
      while (i < reply.size() && std::isspace(static_cast<unsigned char>(reply[i])))
        ++i;
      if (i < reply.size() && reply[i] == ',')
        ++i;
    }
    if (ok)
      return items;
  }
  return std::nullopt;
}

std::optional<bool> parse_true_false(std::string_view reply_in) {
  const std::string reply = parse_response(reply_in).answer;
  std::string lower;
  for (char c : reply)
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto word_at = [&](std::string_view w) -> std::size_t {
    for (auto pos = lower.find(w); pos != std::string::npos; pos = lower.find(w, pos + 1)) {
      const bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
      const auto end = pos + w.size();
      const bool right =
          end >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[end]));
      if (left && right)
        return pos;
    }
    return std::string::npos;
  };
  const auto t = word_at("true");
  const auto f = word_at("false");
  if (t == std::string::npos && f == std::string::npos)
    return std::nullopt;
  return t < f;
}

namespace {

template <class Parse>
auto ask_with_retry(const Gateway &gateway, const ModelEndpoint &judge, const std::string &prompt,
                    std::string_view reminder, std::uint64_t seed, Parse parse,
                    const std::string &what) {
  std::string last;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto text = attempt == 0 ? prompt : prompt + "\n\n" + std::string(reminder);
    last = gateway.complete(judge_request(judge, std::move(text), seed)).raw_text;
    if (auto v = parse(last))
      return *v;
  }
  throw JudgeUnparseable(what + ": " + last);
}

} // namespace

RecallResult recall_analysis(const Gateway &gateway, const ModelEndpoint &judge,
                             const Question &q, std::string_view gold_answer,
                             std::string_view reasoning, std::uint64_t seed) {
  RecallResult out;
  out.question_id = q.id;
  out.recalls = ask_with_retry(
      gateway, judge, render_recall_identification_prompt(q.text, gold_answer, reasoning),
      "Reply with a Python list of strings only.", seed, parse_python_string_list,
      "unparseable recall list for " + q.id);
  for (const auto &norm : out.recalls)
    out.verified.push_back(ask_with_retry(
        gateway, judge, render_recall_verification_prompt(q.text, gold_answer, norm),
        "Reply with True or False only.", seed, parse_true_false,
        "unparseable verification for " + q.id));
  return out;
}

RecallStats recall_stats(const std::vector<RecallResult> &results) {
  RecallStats s;
  s.thoughts = results.size();
  for (const auto &r : results) {
    s.recalls += r.recalls.size();
    for (bool v : r.verified)
      s.verified += v;
  }
  if (s.thoughts)
    s.avg_recall_count_per_thought =
        static_cast<double>(s.recalls) / static_cast<double>(s.thoughts);
  if (s.recalls)
    s.recall_accuracy_pct = 100.0 * static_cast<double>(s.verified) / static_cast<double>(s.recalls);
  return s;
}

json to_json(const RecallStats &s) {
  return json{{"avg_recall_count_per_thought", s.avg_recall_count_per_thought},
              {"recall_accuracy_pct", s.recall_accuracy_pct},
              {"thoughts", s.thoughts},
              {"recalls", s.recalls},
              {"verified", s.verified}};
}

json to_json(const RecallResult &r) {
  return json{{"question_id", r.question_id}, {"recalls", r.recalls}, {"verified", r.verified}};
}

} // namespace x1

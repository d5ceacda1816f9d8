#include "support/test_support.hpp"

#include <cstdio>
#include <map>

#include "x1/template.hpp"

namespace x1::testing {

namespace {

enum class Outcome { tie, default_wins, contrast_wins };

Outcome math_outcome(int i) {
  if (i % 5 == 0)
    return Outcome::tie;
  return i % 2 ? Outcome::contrast_wins : Outcome::default_wins;
}

Outcome culture_outcome(int j) {
  if (j % 10 == 0 || j % 10 == 3 || j % 10 == 7)
    return Outcome::tie;
  return j % 2 ? Outcome::contrast_wins : Outcome::default_wins;
}

std::string two_digits(int i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d", i);
  return buf;
}

const char *const kCountries[] = {"Japan", "France",  "Germany",   "Korea",  "Italy",
                                  "India", "Finland", "Indonesia", "Greece", "Denmark"};

} // namespace

Step2Fixture make_step2_fixture() {
  Step2Fixture f;
  f.backbone = endpoint("backbone-model", EndpointRole::backbone);
  f.surface = endpoint("surface-model", EndpointRole::surface);
  f.judge = endpoint("judge-model", EndpointRole::judge);

  std::vector<Language> math_langs;
  for (auto l : math_languages())
    if (l != english())
      math_langs.push_back(l);

  for (int i = 0; i < 40; ++i) {
    const int a = 10 + i, b = 3 * i + 1;
    f.questions.push_back(Question{
        .id = "fixture-math:" + two_digits(i),
        .text = "Item M" + two_digits(i) + ": A basket holds " + std::to_string(a) +
                " apples and " + std::to_string(b) +
                " more are added. How many apples are in the basket?",
        .prompt_language = math_langs[static_cast<std::size_t>(i) % math_langs.size()],
        .source = "fixture-math",
        .gold = GoldAnswer::numeric(Decimal::from_int(a + b))});
  }
  for (int j = 0; j < 20; ++j) {
    const std::string country = kCountries[j % 10];
    f.questions.push_back(Question{
        .id = "fixture-culture:" + two_digits(j),
        .text = "Item C" + two_digits(j) + ": In " + country +
                ", what should a guest do when invited to dinner?",
        .prompt_language = english(),
        .source = "fixture-culture",
        .culture_knowledge = "Guests in " + country + " follow custom number " +
                             std::to_string(j) + " at dinner.",
        .country = country});
  }

  f.script = [](const ChatRequest &req) -> std::string {
    const auto &u = req.user;
    if (req.endpoint.role == EndpointRole::judge) {
      const auto resp = u.find("\n\nResponse: ");
      const auto hint = u.find("rating-hint ", resp);
      if (resp == std::string::npos || hint == std::string::npos)
        return "I cannot rate this.";
      const auto start = hint + 12;
      const auto end = u.find_first_not_of("0123456789.", start);
      return u.substr(start, end - start);
    }
    const bool contrast = req.endpoint.role == EndpointRole::surface;
    const std::string english_trace =
        "Let me think about this carefully. I need to work through the question "
        "step by step and then check the result before answering.";

    if (auto m = u.find("Item M"); m != std::string::npos) {
      const int i = std::stoi(u.substr(m + 6, 2));
      const int a = 10 + i, b = 3 * i + 1;
      const auto outcome = math_outcome(i);
      bool correct = contrast ? outcome == Outcome::contrast_wins
                              : outcome == Outcome::default_wins;
      if (outcome == Outcome::tie)
        correct = i % 10 == 0;
      const int value = correct ? a + b : a + b + 1;
      const std::string answer = "The answer is " + std::to_string(value) + ".";
      if (!contrast)
        return "<think>\n" + english_trace + "\n</think>\n\n" + answer;
      const auto prefix = *req.forced_prefix;
      const auto lang = parse_response(prefix).marker_language;
      return prefix + "\n\n" + std::to_string(a) + " + " + std::to_string(b) + " = " +
             std::to_string(value) + "\n\n" + end_marker(*lang) + "\n</think>\n\n" + answer;
    }

    const auto c = u.find("Item C");
    const int j = std::stoi(u.substr(c + 6, 2));
    const auto outcome = culture_outcome(j);
    std::string score;
    switch (outcome) {
    case Outcome::tie:
      score = j < 10 ? "8" : "6.5";
      break;
    case Outcome::contrast_wins:
      score = contrast ? "7.5" : "7.4";
      break;
    case Outcome::default_wins:
      score = contrast ? "6" : "9";
      break;
    }
    const std::string answer =
        "A guest should follow custom number " + std::to_string(j) + ". rating-hint " + score;
    if (!contrast)
      return "<think>\n" + english_trace + "\n</think>\n\n" + answer;
    const auto prefix = *req.forced_prefix;
    const auto lang = parse_response(prefix).marker_language;
    return prefix + "\n\nCustom " + std::to_string(j) + "\n\n" + end_marker(*lang) +
           "\n</think>\n\n" + answer;
  };
  return f;
}

} // namespace x1::testing

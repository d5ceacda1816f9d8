#include <doctest.h>

#include "support/test_support.hpp"
#include "x1/error.hpp"
#include "x1/scoring.hpp"

using namespace x1;

namespace {

Decimal D(const char *s) { return Decimal::from_string(s); }
GoldAnswer gold(const char *s) { return GoldAnswer::numeric(D(s)); }

struct ExtractCase {
  const char *text;
  const char *expected; // nullptr → NoNumberFound
};

// Hand-written rule oracle.
const ExtractCase kExtractCases[] = {
    {"So, 4 + 14 = 18 apples.", "18"},
    {"The answer is 18.", "18"},
    {"18.5", "18.5"},
    {"3,600", "3600"},
    {"She pays $3,600 in total.", "3600"},
    {"1 000 000 people", "1000000"},
    {"About 12,5 percent", "5"},
    {"The ratio is 0.75", "0.75"},
    {"-7 degrees", "-7"},
    {"From 3 to -2", "-2"},
    {"5-3=2", "2"},
    {"50%", "50"},
    {"Profit: 12.5%", "12.5"},
    {"৩৬", "36"},
    {"উত্তর হল ১৮।", "18"},
    {"الجواب هو ٤٢", "42"},
    {"۱۲۳", "123"},
    {"उत्तर १०० है", "100"},
    {"คำตอบคือ ๒๕", "25"},
    {"答案是１８", "18"},
    {"٣٫٥", "3.5"},
    {"١٬٠٠٠", "1000"},
    {"2،500", "2500"},
    {"no digits here", nullptr},
    {"", nullptr},
    {"x2 and H2O", nullptr},
    {"version v3", nullptr},
    {"\\boxed{72}", "72"},
    {"**Answer:** 64", "64"},
    {"It takes 3 hours and 45 minutes, so 225 minutes.", "225"},
    {"1, 2, 3", "3"},
    {"12,34", "34"},
    {"1,2345", "2345"},
    {"Total = 1,234.5", "1234.5"},
    {"Result: 007", "7"},
    {"0.50", "0.5"},
    {"The answer is 18.\n", "18"},
    {"Answer: 18. Check: 9 + 9 = 18", "18"},
    {"We get 10 then 20 and finally 30", "30"},
    {"Result is 3.", "3"},
    {"2.5.", "2.5"},
    {"(42)", "42"},
    {"[1, 2, 3]", "3"},
    {"5th place", "5"},
    {"Number 9!", "9"},
    {"1e5", "1"},
    {"12:30", "30"},
    {"3/4", "4"},
    {"<think>\nI think 100.\n</think>\n\nThe answer is 7.", "7"},
    {"<think>\nonly 99 here\n</think>\n\nno number", nullptr},
};

} // namespace

TEST_SUITE("scoring") {

TEST_CASE("numeric extraction rule set") {
  for (const auto &c : kExtractCases) {
    const std::string text = c.text;
    CAPTURE(text);
    if (c.expected == nullptr)
      CHECK_THROWS_AS(extract_numeric_answer(c.text), NoNumberFound);
    else
      CHECK(extract_numeric_answer(c.text) == D(c.expected));
  }
  CHECK(std::size(kExtractCases) == 50);
}

TEST_CASE("exact-match scoring") {
  CHECK(score_math("The answer is 18.", gold("18")).score == 10.0);
  CHECK(score_math("18.5", gold("18")).score == 0.0);
  CHECK(score_math("3,600", gold("3600")).score == 10.0);
  CHECK(score_math("৩৬", gold("36")).score == 10.0);
  const auto j = score_math("no digits here", gold("1"));
  CHECK(j.score == 0.0);
  CHECK(j.rationale == "no extractable number");
  CHECK(j.method == JudgeMethod::math_exact);
  CHECK_THROWS_AS(score_math("1", GoldAnswer::choice("A")), ValidationError);
}

TEST_CASE("multiple-choice labels") {
  struct Case {
    const char *text;
    char label; // 0 → none
  };
  const Case cases[] = {
      {"B) Bowing is polite", 'B'},
      {"B", 'B'},
      {"b", 'B'},
      {"(C)", 'C'},
      {"The answer is B", 'B'},
      {"The answer is (d).", 'D'},
      {"Answer: A", 'A'},
      {"answer: c", 'C'},
      {"This is a tricky one, the answer is B", 'B'},
      {"I would pick option C.", 'C'},
      {"Choice: D", 'D'},
      {"**B**", 'B'},
      {"A. Shake hands", 'A'},
      {"D - none of the above", 'D'},
      {"Correct option (A) because it is polite", 'A'},
      {"It must be C", 'C'},
      {"I think it is A", 'A'},
      {"Between A and B, the answer is B", 'B'},
      {"C) Tea", 'C'},
      {"[D]", 'D'},
      {"<think>\nMaybe A?\n</think>\n\nB", 'B'},
      {"The correct answer: D", 'D'},
      {"A", 'A'},
      {"  c  ", 'C'},
      {"(b)", 'B'},
      {"Answer is A", 'A'},
      {"Final answer is D.", 'D'},
      {"Option B is right", 'B'},
      {"ABC", 0},
      {"none", 0},
      {"", 0},
      {"E) other", 0},
      {"I cannot decide", 0},
      {"Both options look fine", 0},
      {"Answer: B) Germany", 'B'},
      {"B. The bride's family", 'B'},
      {"CD", 0},
      {"The best answer is C", 'C'},
      {"(A) Rice", 'A'},
      {"Answer:\nD", 'D'},
  };
  CHECK(std::size(cases) == 40);
  for (const auto &c : cases) {
    const std::string text = c.text;
    CAPTURE(text);
    const auto got = extract_choice_label(c.text);
    if (c.label == 0)
      CHECK_FALSE(got);
    else
      CHECK(got == std::optional<char>(c.label));
  }
  CHECK(choice_correct("B) Bowing", GoldAnswer::choice("B")));
  CHECK(choice_correct("b", GoldAnswer::choice("B")));
  CHECK_FALSE(choice_correct("A", GoldAnswer::choice("B")));
}

TEST_CASE("judge prompt") {
  const auto p = render_culture_judge_prompt("Q?", "Norm.", "Resp.");
  CHECK(p.find("Total rating (a float on a scale of 0 to 10):") != std::string::npos);
  CHECK(p.find("Question: Q?") != std::string::npos);
  CHECK(p.find("Cultural Knowledge: Norm.") != std::string::npos);
  CHECK(p.find("Response: Resp.") != std::string::npos);
  CHECK(p.find("Your output should be a float score only.") != std::string::npos);
}

TEST_CASE("judge reply parsing") {
  struct Case {
    const char *reply;
    double score; // < 0 → unparseable
  };
  const Case cases[] = {
      {"8.5", 8.5},
      {"Score: 7", 7},
      {"7/10", 7},
      {"Total rating: 9", 9},
      {"Total rating (a float on a scale of 0 to 10): 6.5", 6.5},
      {"10", 10},
      {"0", 0},
      {"12", 10},
      {"-3", 0},
      {"  4.0  ", 4},
      {"Rating = 3.25", 3.25},
      {"I'd give it 8.", 8},
      {"**9.5**", 9.5},
      {"<think>\nThe response scores 2 points.\n</think>\n\n6", 6},
      {"score 5 out of 10", 5},
      {"On a scale of 0 to 10 I give 7", 7},
      {"The response deserves .5", 0.5},
      {"8.75/10", 8.75},
      {"Total rating (a float on a scale of 0 to 10): 10.0", 10},
      {"1", 1},
      {"9.9", 9.9},
      {"Score:\n3", 3},
      {"rating: 100", 10},
      {"0.0", 0},
      {"Final score - 4", 4},
      {"no idea", -1},
      {"", -1},
      {"N/A", -1},
      {"Total rating (a float on a scale of 0 to 10):", -1},
      {"seven", -1},
  };
  CHECK(std::size(cases) == 30);
  for (const auto &c : cases) {
    const std::string text = c.reply;
    CAPTURE(text);
    const auto got = parse_judge_score(c.reply);
    if (c.score < 0)
      CHECK_FALSE(got);
    else {
      REQUIRE(got);
      CHECK(*got == doctest::Approx(c.score));
    }
  }
}

TEST_CASE("culture scoring calls the judge and retries once") {
  Question q{.id = "c1", .text = "Q?", .prompt_language = english(), .source = "s",
             .culture_knowledge = "Bow.", .country = "Japan"};
  int calls = 0;
  std::optional<double> temperature;
  auto gw = testing::scripted_gateway([&](const ChatRequest &r) -> std::string {
    temperature = r.effective_sampling().temperature;
    return ++calls == 1 ? "hmm" : "Score: 7";
  });
  const auto judge = testing::endpoint("judge", EndpointRole::judge);
  const auto j = score_culture(gw, judge, q, "They bow.");
  CHECK(j.score == 7.0);
  CHECK(j.method == JudgeMethod::culture_judge);
  CHECK(j.judge_model == "judge");
  CHECK(calls == 2);
  CHECK(temperature == 0.0);

  auto silent = testing::scripted_gateway([](const ChatRequest &) { return "no score"; });
  CHECK_THROWS_AS(score_culture(silent, judge, q, "x"), JudgeUnparseable);

  Question math{.id = "m", .text = "1+1", .prompt_language = english(), .source = "s"};
  CHECK_THROWS_AS(score_culture(gw, judge, math, "2"), ValidationError);
}

}

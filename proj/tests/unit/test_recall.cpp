#include <doctest.h>

#include "support/test_support.hpp"
#include "x1/error.hpp"
#include "x1/recall.hpp"

using namespace x1;

TEST_SUITE("recall") {

TEST_CASE("python list parsing") {
  CHECK(parse_python_string_list(R"(["norm A", "norm B"])") ==
        std::vector<std::string>{"norm A", "norm B"});
  CHECK(parse_python_string_list(R"(['it\'s', "b"])") ==
        std::vector<std::string>{"it's", "b"});
  CHECK(parse_python_string_list("Here you go: ['x']") == std::vector<std::string>{"x"});
  CHECK(parse_python_string_list("[]")->empty());
  CHECK(parse_python_string_list("None")->empty());
  CHECK_FALSE(parse_python_string_list("no list here"));
  CHECK_FALSE(parse_python_string_list("['unterminated"));
}

TEST_CASE("true/false parsing") {
  CHECK(parse_true_false("True") == true);
  CHECK(parse_true_false("false.") == false);
  CHECK(parse_true_false("The statement is False") == false);
  CHECK_FALSE(parse_true_false("Untrue"));
  CHECK_FALSE(parse_true_false(""));
}

TEST_CASE("prompts carry the inputs") {
  const auto id = render_recall_identification_prompt("Q?", "A.", "Reasoning.");
  CHECK(id.find("Q?") != std::string::npos);
  CHECK(id.find("Reasoning.") != std::string::npos);
  const auto v = render_recall_verification_prompt("Q?", "A.", "norm X");
  CHECK(v.find("norm X") != std::string::npos);
}

TEST_CASE("recall analysis and stats") {
  const Question q{.id = "c1", .text = "How to greet?", .prompt_language = english(),
                   .source = "t", .culture_knowledge = "Bow.", .country = "Japan"};
  int identification_calls = 0;
  auto gw = testing::scripted_gateway([&](const ChatRequest &r) -> std::string {
    if (r.user.find("norm A") != std::string::npos)
      return "True";
    if (r.user.find("norm B") != std::string::npos)
      return "False";
    return ++identification_calls == 1 ? "I am not sure" : R"(["norm A", "norm B"])";
  });
  const auto judge = testing::endpoint("judge", EndpointRole::judge);
  const auto r = recall_analysis(gw, judge, q, "Bow.", "Guests usually bow first.");
  CHECK(identification_calls == 2);
  CHECK(r.recalls == std::vector<std::string>{"norm A", "norm B"});
  CHECK(r.verified == std::vector<bool>{true, false});

  const RecallResult empty{.question_id = "c2"};
  const auto s = recall_stats({r});
  CHECK(s.avg_recall_count_per_thought == doctest::Approx(2.0));
  CHECK(s.recall_accuracy_pct == doctest::Approx(50.0));
  const auto s2 = recall_stats({r, empty});
  CHECK(s2.thoughts == 2);
  CHECK(s2.avg_recall_count_per_thought == doctest::Approx(1.0));
  CHECK(to_json(s2)["recalls"] == 2);

  auto silent = testing::scripted_gateway([](const ChatRequest &) { return "dunno"; });
  CHECK_THROWS_AS(recall_analysis(silent, judge, q, "Bow.", "x"), JudgeUnparseable);
}

}

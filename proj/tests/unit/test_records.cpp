#include <doctest.h>

#include "x1/error.hpp"
#include "x1/types.hpp"

using namespace x1;
using nlohmann::json;

TEST_SUITE("records") {

TEST_CASE("question round trip") {
  Question q{.id = "mgsm:th:3",
             .text = "How many?",
             .prompt_language = canonical_language("th"),
             .source = "mgsm",
             .gold = GoldAnswer::numeric(Decimal::from_string("3600"))};
  const json j = q;
  CHECK(j.at("prompt_language") == "Thai");
  CHECK(j.at("gold").at("value") == "3600");
  CHECK(j.get<Question>() == q);
  CHECK(q.scenario() == Scenario::math);
}

TEST_CASE("culture question scenario") {
  Question q{.id = "cb:ja:0",
             .text = "Q",
             .prompt_language = english(),
             .source = "culturebank",
             .culture_knowledge = "Bow when greeting.",
             .country = "Japan"};
  CHECK(q.scenario() == Scenario::culture);
  CHECK(json(q).get<Question>() == q);
}

TEST_CASE("question id format") {
  CHECK(make_question_id("mgsm", canonical_language("Bengali"), 7) == "mgsm:bn:7");
}

TEST_CASE("sft and dpo records") {
  SftRecord r{.input = "Q",
              .output = "O",
              .meta = {.question_id = "q1",
                       .thinking_language = canonical_language("ar"),
                       .scenario = Scenario::culture,
                       .stage = Stage::step2,
                       .run_id = "r"}};
  const json j = r;
  CHECK(j.at("meta").at("thinking_language") == "Arabic");
  CHECK(j.at("meta").at("scenario") == "culture");
  CHECK(j.at("meta").at("stage") == "step2");
  CHECK(j.get<SftRecord>() == r);

  DpoRecord d{.prompt = "P", .chosen = "C", .rejected = "R", .meta = r.meta,
              .rejected_language = english(), .chosen_score = 10, .rejected_score = 0};
  const json dj = d;
  CHECK(dj.contains("prompt"));
  CHECK(dj.contains("chosen"));
  CHECK(dj.contains("rejected"));
  CHECK(dj.get<DpoRecord>() == d);
}

TEST_CASE("judgment method strings") {
  Judgment j{.score = 8.5, .method = JudgeMethod::culture_judge, .judge_model = "judge"};
  const json js = j;
  CHECK(js.at("method") == "culture-judge");
  CHECK(js.get<Judgment>() == j);
}

TEST_CASE("endpoint validation") {
  ModelEndpoint e;
  e.model_name = "m";
  e.role = EndpointRole::mock;
  CHECK_THROWS_AS(validate(e), ValidationError);
  e.fixture = "f.jsonl";
  CHECK_NOTHROW(validate(e));
  e.role = EndpointRole::backbone;
  CHECK_THROWS_AS(validate(e), ValidationError);
  e.base_url = "http://localhost:8000/v1";
  CHECK_NOTHROW(validate(e));

  const json j = e;
  const auto back = j.get<ModelEndpoint>();
  CHECK(back.base_url == e.base_url);
  CHECK(back.default_think_language == english());
  CHECK(back.sampling.max_new_tokens == 32768);
}

TEST_CASE("builtin sources") {
  CHECK(builtin_source("mgsm8kinstruct", "x").per_language_quota.size() == 10);
  CHECK(builtin_source("culturebank", "x").kind == QuestionKind::culture);
  CHECK_THROWS_AS(builtin_source("other", "x"), ValidationError);
}

}

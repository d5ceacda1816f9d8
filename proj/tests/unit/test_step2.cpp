#include <doctest.h>

#include <algorithm>

#include "support/test_support.hpp"
#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/step2.hpp"
#include "x1/template.hpp"

using namespace x1;

namespace {

Language L(const char *name) { return canonical_language(name); }

Question math_q(const std::string &id, Language prompt, const char *gold = "18") {
  return Question{.id = id, .text = "What is 4 + 14?", .prompt_language = prompt,
                  .source = "t", .gold = GoldAnswer::numeric(Decimal::from_string(gold))};
}

Question culture_q(const std::string &id, std::optional<std::string> country) {
  return Question{.id = id, .text = "How do guests greet hosts?",
                  .prompt_language = english(), .source = "t",
                  .culture_knowledge = "Guests bow.", .country = std::move(country)};
}

Verdict verdict(const std::string &id, double d, double c) {
  TrajectoryPair p{.question = math_q(id, L("Thai")),
                   .default_traj = to_trajectory("<think>\nd\n</think>\n\nd-answer"),
                   .contrast_traj = to_trajectory(render_think_response(L("Thai"), "c", "c-answer")),
                   .default_lang = english(),
                   .contrast_lang = L("Thai"),
                   .run_id = "r"};
  Judgment jd{.score = d}, jc{.score = c};
  return Verdict{.pair = p, .default_score = jd, .contrast_score = jc,
                 .winner = decide(d, c)};
}

} // namespace

TEST_SUITE("step2") {

TEST_CASE("contrast language selection") {
  CHECK(contrast_language_for(math_q("a", L("Thai")), english()) == L("Thai"));
  CHECK(contrast_language_for(math_q("a", L("Thai")), L("Chinese")) == english());
  CHECK(contrast_language_for(culture_q("c", "Japan"), english()) == L("Japanese"));
  CHECK(contrast_language_for(culture_q("c", "Japan"), L("Japanese")) == english());
  CHECK(contrast_language_for(math_q("a", english()), english(), L("French")) == L("French"));
  CHECK_THROWS_AS(contrast_language_for(math_q("a", english()), english()), NoPivotAvailable);
  CHECK_THROWS_AS(contrast_language_for(culture_q("c", "United States"), english()),
                  NoPivotAvailable);
  CHECK(contrast_language_for(culture_q("c", "United States"), english(), L("Spanish")) ==
        L("Spanish"));
  CHECK_THROWS_AS(contrast_language_for(culture_q("c", std::nullopt), english()),
                  ValidationError);
}

TEST_CASE("exact ties only") {
  CHECK(decide(10, 10) == Winner::tie);
  CHECK(decide(7.5, 7.4) == Winner::default_side);
  CHECK(decide(7.4, 7.5) == Winner::contrast);
  CHECK(decide(0, 0) == Winner::tie);
  CHECK(to_string(Winner::default_side) == "default");
  CHECK(winner_from_string("contrast") == Winner::contrast);
}

TEST_CASE("math trajectories are scored by exact match") {
  const auto q = math_q("a", L("Thai"));
  CHECK(score_trajectory_math(q, to_trajectory("<think>\nx\n</think>\n\n18")).score == 10);
  CHECK(score_trajectory_math(q, to_trajectory("<think>\nx\n</think>\n\n17")).score == 0);
  auto choice = q;
  choice.gold = GoldAnswer::choice("C");
  CHECK(score_trajectory_math(choice, to_trajectory("The answer is C")).score == 10);
}

TEST_CASE("emit drops ties and writes one record of each kind per win") {
  std::vector<Verdict> vs;
  const double scores[10][2] = {{10, 0}, {0, 10}, {10, 10}, {5, 4},  {3, 9},
                                {0, 0},  {8, 2},  {7.5, 7.4}, {1, 1}, {2, 6}};
  for (int i = 0; i < 10; ++i)
    vs.push_back(verdict("q" + std::to_string(9 - i), scores[i][0], scores[i][1]));
  testing::TempDir dir;
  const auto summary = emit_step2_datasets(vs, dir.path(), {.run_id = "r"});
  CHECK(summary.records == 7);
  CHECK(summary.awareness_records == 7);
  CHECK(summary.dpo_records == 7);
  CHECK(summary.ties == 3);
  CHECK(summary.ties_per_language.at("Thai") == 3);

  const auto sft = read_jsonl(dir / kStep2SftFile);
  const auto aware = read_jsonl(dir / kStep2AwarenessFile);
  const auto dpo = read_jsonl(dir / kStep2DpoFile);
  REQUIRE(sft.size() == 7);
  REQUIRE(aware.size() == 7);
  REQUIRE(dpo.size() == 7);
  CHECK(std::is_sorted(sft.begin(), sft.end(), [](const auto &a, const auto &b) {
    return a["meta"]["question_id"].template get<std::string>() <
           b["meta"]["question_id"].template get<std::string>();
  }));

  // q9 is the first verdict: default (English) wins 10 to 0.
  const auto last = sft.back();
  CHECK(last["meta"]["question_id"] == "q9");
  CHECK(last["meta"]["thinking_language"] == "English");
  CHECK(last["output"] ==
        "<think>\n<English_start>\n\nd\n\n<English_end>\n</think>\n\nd-answer");
  CHECK(aware.back()["output"] == "<think>\n\n</think>\n\nEnglish");
  CHECK(dpo.back()["chosen"] == last["output"]);
  CHECK(dpo.back()["rejected"] ==
        "<think>\n<Thai_start>\n\nc\n\n<Thai_end>\n</think>\n\nc-answer");
  CHECK(dpo.back()["meta"]["chosen_score"] == 10.0);
  CHECK(dpo.back()["meta"]["rejected_score"] == 0.0);

  const auto json_summary = nlohmann::json::parse(read_text_file(dir / kStep2SummaryFile));
  CHECK(json_summary["ties"] == 3);
}

TEST_CASE("awareness ratio subsamples by question id") {
  std::vector<Verdict> vs;
  for (int i = 0; i < 200; ++i)
    vs.push_back(verdict("q" + std::to_string(i), 10, 0));
  testing::TempDir a, b;
  const auto half = emit_step2_datasets(vs, a.path(), {.run_id = "r", .awareness_ratio = 0.5});
  const auto again = emit_step2_datasets(vs, b.path(), {.run_id = "r", .awareness_ratio = 0.5});
  CHECK(half.records == 200);
  CHECK(half.awareness_records > 60);
  CHECK(half.awareness_records < 140);
  CHECK(half.awareness_records == again.awareness_records);
  testing::TempDir c;
  CHECK(emit_step2_datasets(vs, c.path(), {.awareness_ratio = 0.0}).awareness_records == 0);
}

TEST_CASE("emit rejects inconsistent verdicts") {
  testing::TempDir dir;
  auto both_english = verdict("x", 10, 0);
  both_english.pair.contrast_lang = english();
  CHECK_THROWS_AS(emit_step2_datasets({both_english}, dir.path()), ValidationError);
  auto wrong_winner = verdict("y", 10, 0);
  wrong_winner.winner = Winner::contrast;
  CHECK_THROWS_AS(emit_step2_datasets({wrong_winner}, dir.path()), ValidationError);
}

TEST_CASE("malformed contrast trajectory") {
  auto gw = testing::scripted_gateway([](const ChatRequest &r) -> std::string {
    if (r.forced_prefix)
      return "ignored the prefix";
    return "<think>\nplain\n</think>\n\n18";
  });
  auto bad_prefix_gw = testing::scripted_gateway([](const ChatRequest &r) -> std::string {
    if (r.forced_prefix)
      return "<think>\n<French_start>\nbonjour\n<French_end>\n</think>\n\n18";
    return "<think>\nplain\n</think>\n\n18";
  });
  const auto backbone = testing::endpoint("b");
  const auto surface = testing::endpoint("s", EndpointRole::surface);
  // The gateway prepends the forced prefix, so only a conflicting marker fails.
  const auto pair = generate_pair(gw, backbone, surface, math_q("m", L("Thai")));
  CHECK(pair.contrast_lang == L("Thai"));
  CHECK(pair.contrast_traj.raw.starts_with(build_think_prefix(L("Thai"))));
  CHECK_FALSE(pair.contrast_traj.thinking_language);
  CHECK(pair.default_lang == english());
  CHECK_THROWS_AS(generate_pair(bad_prefix_gw, backbone, surface, math_q("m", L("Thai"))),
                  MalformedTrajectory);
}

TEST_CASE("end-to-end on the scripted fixture") {
  const auto f = testing::make_step2_fixture();
  auto gw = testing::scripted_gateway(f.script);
  const auto batch = generate_pairs(gw, f.backbone, f.surface, f.questions,
                                    {.run_id = "fx"}, 4);
  REQUIRE(batch.skipped.empty());
  REQUIRE(batch.pairs.size() == f.questions.size());
  std::vector<Verdict> verdicts;
  for (const auto &p : batch.pairs)
    verdicts.push_back(identify_advantageous(p, gw, f.judge));
  testing::TempDir dir;
  const auto summary = emit_step2_datasets(verdicts, dir.path(), {.run_id = "fx"});
  CHECK(summary.ties == f.expected_ties);
  CHECK(summary.records == f.expected_wins);
  CHECK(summary.dpo_records == f.expected_wins);
  CHECK(read_jsonl(dir / kStep2SftFile).size() == f.expected_wins);

  const auto &culture = verdicts.back();
  CHECK(culture.pair.question.country == "Denmark");
  CHECK(culture.default_score.method == JudgeMethod::culture_judge);
  CHECK(culture.pair.contrast_lang == L("Danish"));
}

TEST_CASE("pair and verdict serialization round trip") {
  const auto v = verdict("q1", 7.5, 7.4);
  const nlohmann::json j = v;
  CHECK(j["pair_id"] == "q1");
  CHECK(j["winner"] == "default");
  const auto back = j.get<Verdict>();
  CHECK(back.pair.question == v.pair.question);
  CHECK(back.pair.contrast_traj == v.pair.contrast_traj);
  CHECK(back.winner == Winner::default_side);
  CHECK(back.contrast_score.score == 7.4);
}

}

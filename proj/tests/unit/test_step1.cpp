#include <doctest.h>

#include <memory>

#include "support/test_support.hpp"
#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/plugin.hpp"
#include "x1/step1.hpp"
#include "x1/template.hpp"

using namespace x1;

namespace {

Question math_question(const std::string &id, const std::string &text) {
  return Question{.id = id, .text = text, .prompt_language = english(), .source = "seed",
                  .gold = GoldAnswer::numeric(Decimal::from_string("18"))};
}

SeedTrace seed_trace(const std::string &id) {
  return SeedTrace{.question = math_question(id, "What is 4 + 14?"),
                   .language = english(),
                   .trace = "4 + 14 = 18.",
                   .answer = "18"};
}

class FixedScorer : public QualityScorer {
public:
  explicit FixedScorer(std::vector<double> scores) : scores_(std::move(scores)) {}
  double score(std::string_view, std::string_view, Language) override {
    return scores_.at(next_++ % scores_.size());
  }

private:
  std::vector<double> scores_;
  std::size_t next_ = 0;
};

class FailingScorer : public QualityScorer {
public:
  double score(std::string_view, std::string_view, Language) override {
    throw ScorerFailure("model unavailable");
  }
};

std::vector<TranslatedTrace> candidates(std::size_t n, const std::string &seed_id = "s1") {
  std::vector<TranslatedTrace> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({.seed_id = seed_id, .target = canonical_language("Arabic"),
                   .text = "translation " + std::to_string(i)});
  return out;
}

} // namespace

TEST_SUITE("step1") {

TEST_CASE("threshold is inclusive") {
  FixedScorer scorer({0.39, 0.40, 0.85});
  const auto out = filter_quality(candidates(3), {seed_trace("s1")}, scorer, 0.4);
  REQUIRE(out.size() == 3);
  CHECK_FALSE(out[0].kept);
  CHECK(out[1].kept);
  CHECK(out[2].kept);
  CHECK(out[0].quality == doctest::Approx(0.39));
}

TEST_CASE("constant scores and a zero threshold") {
  const std::vector<SeedTrace> seeds{seed_trace("s1")};
  FixedScorer zero({0.0});
  for (const auto &t : filter_quality(candidates(5), seeds, zero, 0.0))
    CHECK(t.kept);
  FixedScorer one({1.0});
  for (const auto &t : filter_quality(candidates(5), seeds, one, 0.4))
    CHECK(t.kept);
  FixedScorer low({0.1});
  for (const auto &t : filter_quality(candidates(5), seeds, low, 0.4))
    CHECK_FALSE(t.kept);
}

TEST_CASE("discarded candidates go to the audit file") {
  testing::TempDir dir;
  FixedScorer scorer({0.1, 0.9});
  filter_quality(candidates(4), {seed_trace("s1")}, scorer, 0.4, dir / "audit.jsonl");
  const auto rows = read_jsonl(dir / "audit.jsonl");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["kept"] == false);
  CHECK(rows[0]["text"] == "translation 0");
}

TEST_CASE("scorer failure aborts the batch") {
  FailingScorer scorer;
  CHECK_THROWS_AS(filter_quality(candidates(2), {seed_trace("s1")}, scorer, 0.4),
                  ScorerFailure);
}

TEST_CASE("unknown seed is a join failure") {
  FixedScorer scorer({0.9});
  CHECK_THROWS_AS(filter_quality(candidates(1, "missing"), {seed_trace("s1")}, scorer, 0.4),
                  JoinFailure);
  testing::TempDir dir;
  auto kept = candidates(1, "missing");
  kept[0].kept = true;
  CHECK_THROWS_AS(emit_step1_dataset(kept, {seed_trace("s1")}, dir / "out.jsonl"),
                  JoinFailure);
}

TEST_CASE("emitted record format") {
  testing::TempDir dir;
  TranslatedTrace t{.seed_id = "s1", .target = canonical_language("Arabic"),
                    .text = "٤ + ١٤ = ١٨.", .quality = 0.8, .kept = true};
  TranslatedTrace dropped = t;
  dropped.kept = false;
  const auto summary =
      emit_step1_dataset({t, dropped}, {seed_trace("s1")}, dir / "step1.jsonl", "run1");
  CHECK(summary.records == 1);
  CHECK(summary.per_language.at("Arabic") == 1);
  const auto rows = read_jsonl(dir / "step1.jsonl");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["input"] == "What is 4 + 14?");
  CHECK(rows[0]["output"] ==
        "<think>\n<Arabic_start>\n\n٤ + ١٤ = ١٨.\n\n<Arabic_end>\n</think>\n\n18");
  CHECK(rows[0]["meta"]["stage"] == "step1");
  CHECK(rows[0]["meta"]["thinking_language"] == "Arabic");
  CHECK(rows[0]["meta"]["run_id"] == "run1");
  CHECK(rows[0]["meta"]["question_id"] == "s1");
}

TEST_CASE("translation prompt") {
  const auto p = render_translation_prompt(canonical_language("Japanese"), "Step one.");
  CHECK(p.find("into Japanese") != std::string::npos);
  CHECK(p.find("Step one.") != std::string::npos);
  CHECK(p.find("tool") == std::string::npos);
  CHECK(p.find("translator") == std::string::npos);
}

TEST_CASE("seed collection and translation through the gateway") {
  auto gw = testing::scripted_gateway([](const ChatRequest &r) -> std::string {
    if (r.user.rfind("Translate", 0) == 0) {
      const std::string lead = "reasoning process into ";
      const auto at = r.user.find(lead) + lead.size();
      const auto lang = r.user.substr(at, r.user.find('.') - at);
      return "[" + lang + "] 4 + 14 = 18.";
    }
    if (r.user == "empty")
      return "<think>\n\n</think>\n\n5";
    return "<think>\n4 + 14 = 18.\n</think>\n\n18";
  });
  const auto backbone = testing::endpoint("backbone");
  const auto seeds = collect_seed_traces(
      gw, backbone, {math_question("a", "What is 4 + 14?"), math_question("b", "empty")}, 2);
  REQUIRE(seeds.seeds.size() == 1);
  CHECK(seeds.seeds[0].trace == "4 + 14 = 18.");
  CHECK(seeds.seeds[0].answer == "18");
  CHECK(seeds.seeds[0].language == english());
  REQUIRE(seeds.excluded.size() == 1);
  CHECK(seeds.excluded[0].id == "b");

  const std::vector<Language> targets{english(), canonical_language("French"),
                                      canonical_language("Thai")};
  const auto batch = translate_traces(gw, backbone, seeds.seeds, targets, 2);
  REQUIRE(batch.candidates.size() == 2);
  CHECK(batch.failed.empty());
  CHECK(batch.candidates[0].target == canonical_language("French"));
  CHECK(batch.candidates[0].text == "[French] 4 + 14 = 18.");
  CHECK(batch.candidates[1].text == "[Thai] 4 + 14 = 18.");
  CHECK(batch.candidates[0].seed_id == "a");
}

TEST_CASE("heuristic scorer") {
  HeuristicQualityScorer h;
  const std::string src = "First add four and fourteen. The total is eighteen apples.";
  const double same_script =
      h.score(src, "Primero suma cuatro y catorce. El total es dieciocho manzanas.",
              canonical_language("Spanish"));
  CHECK(same_script > 0.4);
  CHECK(same_script <= 1.0);
  CHECK(h.score(src, "", canonical_language("Spanish")) == 0.0);
  const double wrong_script = h.score(src, src, canonical_language("Japanese"));
  CHECK(wrong_script < 0.4);
}

TEST_CASE("plugin scorer protocol") {
  auto ok = std::make_shared<JsonLinePlugin>(
      "while read -r line; do echo '{\"score\": 0.75}'; done");
  PluginQualityScorer scorer(ok);
  CHECK(scorer.score("a", "b", english()) == doctest::Approx(0.75));
  auto bad = std::make_shared<JsonLinePlugin>(
      "while read -r line; do echo '{\"oops\": 1}'; done");
  PluginQualityScorer broken(bad);
  CHECK_THROWS_AS(broken.score("a", "b", english()), ScorerFailure);
}

TEST_CASE("seed and translation serialization round trip") {
  const auto s = seed_trace("s1");
  const SeedTrace back = nlohmann::json(s).get<SeedTrace>();
  CHECK(back.question == s.question);
  CHECK(back.trace == s.trace);
  TranslatedTrace t{.seed_id = "s1", .target = canonical_language("Korean"), .text = "x",
                    .quality = 0.5, .kept = true};
  const TranslatedTrace tb = nlohmann::json(t).get<TranslatedTrace>();
  CHECK(tb.target == t.target);
  CHECK(tb.quality == 0.5);
  CHECK(tb.kept);
}

}

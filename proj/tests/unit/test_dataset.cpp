#include <doctest.h>

#include <fstream>
#include <numeric>
#include <set>

#include "support/test_support.hpp"
#include "x1/dataset.hpp"
#include "x1/error.hpp"
#include "x1/jsonl.hpp"

using namespace x1;
using nlohmann::json;

namespace {

void write_rows(const std::filesystem::path &path, const std::vector<json> &rows) {
  std::ofstream out(path);
  for (const auto &r : rows)
    out << r.dump() << '\n';
}

std::vector<json> culture_rows() {
  std::vector<json> rows;
  const auto &groups = culture_country_map();
  for (const auto &[lang, quota] : culture_quota()) {
    const auto &countries = groups.at(lang.name());
    for (std::size_t i = 0; i < quota; ++i) {
      const auto &country = countries[i % countries.size()];
      rows.push_back({{"question", "What do people in " + country + " do, case " +
                                       std::to_string(i) + "?"},
                      {"knowledge", "A custom of " + country + "."},
                      {"country", country}});
    }
  }
  return rows;
}

} // namespace

TEST_SUITE("dataset") {

TEST_CASE("built-in quotas") {
  const auto culture = culture_quota();
  std::size_t total = 0;
  for (const auto &[lang, n] : culture)
    total += n;
  CHECK(total == 4413);
  CHECK(culture.size() == 25);
  std::size_t countries = 0;
  for (const auto &[group, list] : culture_country_map())
    countries += list.size();
  CHECK(countries == 45);
  const auto math = math_quota();
  CHECK(math.size() == 10);
  for (const auto &[lang, n] : math)
    CHECK(n == 200);
}

TEST_CASE("culture file matching the quota loads without warnings") {
  testing::TempDir dir;
  write_rows(dir / "culture.jsonl", culture_rows());
  const auto loaded = load_dataset(builtin_source("culturebank", dir / "culture.jsonl"));
  CHECK(loaded.questions.size() == 4413);
  CHECK(loaded.warnings.empty());
  std::set<std::string> ids;
  for (const auto &q : loaded.questions) {
    CHECK(q.scenario() == Scenario::culture);
    ids.insert(q.id);
  }
  CHECK(ids.size() == 4413);
}

TEST_CASE("math file") {
  testing::TempDir dir;
  std::vector<json> rows;
  for (auto lang : math_languages())
    for (int i = 0; i < 200; ++i)
      rows.push_back({{"inputs", "Compute " + std::to_string(i) + " + 1."},
                      {"targets", std::to_string(i + 1)},
                      {"language", lang.code()}});
  write_rows(dir / "math.jsonl", rows);
  const auto loaded = load_dataset(builtin_source("mgsm8kinstruct", dir / "math.jsonl"));
  CHECK(loaded.questions.size() == 2000);
  CHECK(loaded.warnings.empty());
  const auto &q = loaded.questions.front();
  CHECK(q.prompt_language == math_languages()[0]);
  REQUIRE(q.gold);
  CHECK(*q.gold->numeric_value == Decimal::from_int(1));
  CHECK(q.id == make_question_id("mgsm8kinstruct", q.prompt_language, 0));

  rows.resize(1990);
  write_rows(dir / "short.jsonl", rows);
  const auto short_load = load_dataset(builtin_source("mgsm8kinstruct", dir / "short.jsonl"));
  REQUIRE(short_load.warnings.size() == 1);
  CHECK(short_load.warnings[0].rfind("QuotaMismatch", 0) == 0);
}

TEST_CASE("schema errors name the line") {
  testing::TempDir dir;
  write_rows(dir / "bad.jsonl", {{{"question", "1+1?"}, {"answer", "2"}},
                                 {{"question", "2+2?"}}});
  try {
    load_dataset({.name = "custom", .path = dir / "bad.jsonl", .kind = QuestionKind::math});
    FAIL("expected SchemaError");
  } catch (const SchemaError &e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  write_rows(dir / "nonnum.jsonl", {{{"question", "1+1?"}, {"answer", "two"}}});
  CHECK_THROWS_AS(
      load_dataset({.name = "custom", .path = dir / "nonnum.jsonl", .kind = QuestionKind::math}),
      SchemaError);
  write_rows(dir / "dup.jsonl", {{{"question", "a"}, {"id", "x"}}, {{"question", "b"}, {"id", "x"}}});
  CHECK_THROWS_AS(
      load_dataset({.name = "custom", .path = dir / "dup.jsonl", .kind = QuestionKind::seed}),
      SchemaError);
  write_rows(dir / "noknow.jsonl", {{{"question", "a"}, {"country", "Japan"}}});
  CHECK_THROWS_AS(load_dataset({.name = "custom", .path = dir / "noknow.jsonl",
                                .kind = QuestionKind::culture}),
                  SchemaError);
  CHECK_THROWS_AS(load_dataset({.name = "custom", .path = dir / "missing.jsonl"}), IoError);
  CHECK_THROWS_AS(builtin_source("flan", dir / "x"), ValidationError);
}

TEST_CASE("choice questions") {
  testing::TempDir dir;
  write_rows(dir / "mc.jsonl", {{{"question", "Pick one"}, {"answer", "b"}, {"country", "Japan"}}});
  const auto loaded =
      load_dataset({.name = "bench", .path = dir / "mc.jsonl", .kind = QuestionKind::choice});
  REQUIRE(loaded.questions.size() == 1);
  CHECK(loaded.questions[0].gold->label == "B");
  CHECK(quota_group(loaded.questions[0]) == canonical_language("Japanese"));
}

TEST_CASE("quota sampling is deterministic") {
  std::vector<Question> qs;
  for (int i = 0; i < 50; ++i)
    qs.push_back({.id = "q" + std::to_string(i), .text = "t", .prompt_language = english(),
                  .source = "s"});
  const std::map<Language, std::size_t> quota{{english(), 10}};
  const auto a = sample_quota(qs, quota, 7);
  const auto b = sample_quota(qs, quota, 7);
  const auto c = sample_quota(qs, quota, 8);
  REQUIRE(a.questions.size() == 10);
  CHECK(a.questions == b.questions);
  CHECK(a.questions != c.questions);
  const auto over = sample_quota(qs, {{english(), 60}}, 1);
  CHECK(over.questions.size() == 50);
  CHECK(over.warnings.size() == 1);
}

}

#include "x1/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include "x1/error.hpp"
#include "x1/jsonl.hpp"

namespace x1 {

using nlohmann::json;

json to_json(const DatasetSummary &s) {
  json files = json::array();
  for (const auto &f : s.files)
    files.push_back(f.filename().string());
  return json{{"run_id", s.run_id},
              {"records", s.records},
              {"per_language", s.per_language},
              {"ties", s.ties},
              {"ties_per_language", s.ties_per_language},
              {"awareness_records", s.awareness_records},
              {"dpo_records", s.dpo_records},
              {"files", files}};
}

namespace {

std::optional<std::string> text_field(const json &row, std::initializer_list<const char *> keys) {
  for (const char *k : keys) {
    auto it = row.find(k);
    if (it == row.end() || it->is_null())
      continue;
    if (it->is_string())
      return it->get<std::string>();
    if (it->is_number_integer())
      return std::to_string(it->get<std::int64_t>());
    if (it->is_number())
      return it->dump();
  }
  return std::nullopt;
}

} // namespace

Language quota_group(const Question &q) {
  if (q.country)
    return culture_language_for(*q.country);
  return q.prompt_language;
}

LoadedDataset load_dataset(const DatasetSource &source) {
  if (!std::filesystem::exists(source.path))
    throw IoError("dataset not found: " + source.path.string());
  const std::string file = source.path.string();
  LoadedDataset out;
  std::map<Language, std::size_t> next_index;
  std::set<std::string> seen;

  for_each_jsonl(source.path, [&](std::size_t line, const json &row) {
    auto fail = [&](const std::string &what) { throw SchemaError(file, line, what); };
    if (!row.is_object())
      fail("row is not a JSON object");
    auto text = text_field(row, {"question", "inputs"});
    if (!text || text->empty())
      fail("missing 'question'");

    std::optional<Language> lang;
    std::optional<std::string> country = text_field(row, {"country"});
    try {
      if (auto tag = text_field(row, {"language"}))
        lang = canonical_language(*tag);
      if (country)
        (void)culture_language_for(*country);
    } catch (const ValidationError &e) {
      fail(e.what());
    }

    Question q{.id = {},
               .text = *text,
               .prompt_language = lang.value_or(english()),
               .source = source.name,
               .gold = std::nullopt,
               .culture_knowledge = text_field(row, {"knowledge", "culture_knowledge"}),
               .country = country};

    auto answer = text_field(row, {"answer", "targets"});
    switch (source.kind) {
    case QuestionKind::math: {
      if (!answer)
        fail("math row without 'answer'");
      auto d = Decimal::parse(*answer);
      if (!d)
        fail("math answer is not a number: '" + *answer + "'");
      q.gold = GoldAnswer::numeric(*d);
      break;
    }
    case QuestionKind::choice: {
      if (!answer || answer->empty())
        fail("multiple-choice row without 'answer'");
      std::string label = *answer;
      std::transform(label.begin(), label.end(), label.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      q.gold = GoldAnswer::choice(std::move(label));
      break;
    }
    case QuestionKind::culture:
      if (!q.culture_knowledge || q.culture_knowledge->empty())
        fail("culture row without 'knowledge'");
      if (!q.country && !lang)
        fail("culture row needs 'country' or 'language'");
      if (answer)
        q.gold = GoldAnswer::choice(*answer);
      break;
    case QuestionKind::seed:
      break;
    }

    const Language group = quota_group(q);
    const std::size_t index = next_index[group]++;
    q.id = text_field(row, {"id"}).value_or(make_question_id(source.name, group, index));
    if (!seen.insert(q.id).second)
      fail("duplicate id '" + q.id + "'");
    out.questions.push_back(std::move(q));
  });

  if (!source.per_language_quota.empty()) {
    std::map<Language, std::size_t> counts;
    for (const auto &q : out.questions)
      ++counts[quota_group(q)];
    for (const auto &[lang, want] : source.per_language_quota) {
      const std::size_t have = counts.contains(lang) ? counts[lang] : 0;
      if (have != want)
        out.warnings.push_back("QuotaMismatch: " + lang.name() + " has " +
                               std::to_string(have) + " rows, expected " +
                               std::to_string(want));
    }
    for (const auto &[lang, have] : counts)
      if (!source.per_language_quota.contains(lang))
        out.warnings.push_back("QuotaMismatch: " + lang.name() + " has " +
                               std::to_string(have) + " rows, expected 0");
  }
  return out;
}

LoadedDataset sample_quota(const std::vector<Question> &questions,
                           const std::map<Language, std::size_t> &quota,
                           std::uint64_t seed) {
  std::map<Language, std::vector<const Question *>> groups;
  for (const auto &q : questions)
    groups[quota_group(q)].push_back(&q);

  std::mt19937_64 rng(seed);
  LoadedDataset out;
  for (const auto &[lang, want] : quota) {
    auto &items = groups[lang];
    for (std::size_t i = items.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(items[i - 1], items[pick(rng)]);
    }
    if (items.size() < want)
      out.warnings.push_back("QuotaMismatch: " + lang.name() + " has " +
                             std::to_string(items.size()) + " rows, expected " +
                             std::to_string(want));
    const std::size_t take = std::min(want, items.size());
    for (std::size_t i = 0; i < take; ++i)
      out.questions.push_back(*items[i]);
  }
  return out;
}

} // namespace x1

#include "x1/step1.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/langid.hpp"
#include "x1/plugin.hpp"
#include "x1/template.hpp"

namespace x1 {

using nlohmann::json;

SeedCollection collect_seed_traces(const Gateway &gateway, const ModelEndpoint &backbone,
                                   const std::vector<Question> &questions,
                                   std::size_t parallelism, std::uint64_t seed) {
  SeedCollection out;
  if (questions.empty())
    return out;
  std::vector<ChatRequest> reqs;
  reqs.reserve(questions.size());
  for (const auto &q : questions) {
    ChatRequest r;
    r.endpoint = backbone;
    r.user = q.text;
    r.seed = seed;
    reqs.push_back(std::move(r));
  }
  gateway.for_each_completion(reqs, parallelism, [&](std::size_t i, BatchItem item) {
    const auto &q = questions[i];
    if (!item.ok()) {
      out.excluded.push_back({q.id, item.error});
      return;
    }
    const auto parsed = parse_response(item.outcome->raw_text);
    if (parsed.trace.empty()) {
      out.excluded.push_back({q.id, "empty trace"});
      return;
    }
    out.seeds.push_back(SeedTrace{.question = q,
                                  .language = parsed.marker_language.value_or(
                                      backbone.default_think_language),
                                  .trace = parsed.trace,
                                  .answer = parsed.answer});
  });
  return out;
}

std::string render_translation_prompt(Language target, std::string_view trace) {
  std::string p = "Translate the following reasoning process into " + target.name() +
                  ". Keep every number, formula and step unchanged and in the same "
                  "order. Output only the translated text.\n\n";
  p += trace;
  return p;
}

TranslationBatch translate_traces(const Gateway &gateway, const ModelEndpoint &backbone,
                                  const std::vector<SeedTrace> &seeds,
                                  const std::vector<Language> &targets,
                                  std::size_t parallelism, std::uint64_t seed) {
  const auto allowed = reasoning_languages();
  for (auto t : targets)
    if (std::find(allowed.begin(), allowed.end(), t) == allowed.end())
      throw ValidationError(t.name() + " is not a reasoning language");

  TranslationBatch out;
  std::vector<ChatRequest> reqs;
  std::vector<std::pair<std::size_t, Language>> slots;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (auto t : targets) {
      if (t == seeds[s].language)
        continue;
      ChatRequest r;
      r.endpoint = backbone;
      r.user = render_translation_prompt(t, seeds[s].trace);
      r.seed = seed;
      reqs.push_back(std::move(r));
      slots.emplace_back(s, t);
    }
  }
  gateway.for_each_completion(reqs, parallelism, [&](std::size_t i, BatchItem item) {
    const auto &[s, target] = slots[i];
    const auto &id = seeds[s].question.id;
    if (!item.ok()) {
      out.failed.push_back({id + "@" + target.code(), item.error});
      return;
    }
    // Thinking backbones wrap their output; the translation is the answer.
    auto text = parse_response(item.outcome->raw_text).answer;
    auto b = text.find_first_not_of(" \t\n");
    auto e = text.find_last_not_of(" \t\n");
    text = b == std::string::npos ? std::string{} : text.substr(b, e - b + 1);
    if (text.empty()) {
      out.failed.push_back({id + "@" + target.code(), "empty translation"});
      return;
    }
    out.candidates.push_back({.seed_id = id, .target = target, .text = std::move(text)});
  });
  return out;
}

double HeuristicQualityScorer::score(std::string_view source, std::string_view translation,
                                     Language target) {
  if (source.empty() || translation.empty())
    return 0.0;
  const double a = static_cast<double>(source.size());
  const double b = static_cast<double>(translation.size());
  const double ratio = std::min(a, b) / std::max(a, b);
  double match = 0.5;
  if (auto guess = LanguageDetector().try_detect(translation))
    match = guess->language == target ? 1.0 : 0.25;
  return std::sqrt(ratio) * match;
}

PluginQualityScorer::PluginQualityScorer(std::shared_ptr<JsonLinePlugin> plugin)
    : plugin_(std::move(plugin)) {}

double PluginQualityScorer::score(std::string_view source, std::string_view translation,
                                  Language target) {
  json reply;
  try {
    reply = plugin_->request(
        {{"text", translation}, {"source", source}, {"language", target.code()}});
  } catch (const Error &e) {
    throw ScorerFailure(std::string("quality plugin failed: ") + e.what());
  }
  auto it = reply.find("score");
  if (it == reply.end() || !it->is_number())
    throw ScorerFailure("quality plugin reply has no numeric 'score': " + reply.dump());
  const double v = it->get<double>();
  if (!std::isfinite(v))
    throw ScorerFailure("quality plugin returned a non-finite score");
  return v;
}

std::vector<TranslatedTrace> filter_quality(std::vector<TranslatedTrace> cands,
                                            const std::vector<SeedTrace> &seeds,
                                            QualityScorer &scorer, double threshold,
                                            const std::optional<std::filesystem::path> &audit) {
  std::map<std::string, const SeedTrace *> by_id;
  for (const auto &s : seeds)
    by_id.emplace(s.question.id, &s);
  for (auto &c : cands) {
    auto it = by_id.find(c.seed_id);
    if (it == by_id.end())
      throw JoinFailure("translation refers to unknown seed '" + c.seed_id + "'");
    c.quality = scorer.score(it->second->trace, c.text, c.target);
    c.kept = c.quality >= threshold;
  }
  if (audit) {
    JsonlWriter writer(*audit);
    for (const auto &c : cands)
      if (!c.kept)
        writer.write(json(c));
  }
  return cands;
}

DatasetSummary emit_step1_dataset(const std::vector<TranslatedTrace> &kept,
                                  const std::vector<SeedTrace> &seeds,
                                  const std::filesystem::path &out,
                                  const std::string &run_id) {
  std::map<std::string, const SeedTrace *> by_id;
  for (const auto &s : seeds)
    by_id.emplace(s.question.id, &s);

  std::vector<SftRecord> records;
  for (const auto &t : kept) {
    if (!t.kept)
      continue;
    auto it = by_id.find(t.seed_id);
    if (it == by_id.end())
      throw JoinFailure("kept translation refers to unknown seed '" + t.seed_id + "'");
    const auto &seed = *it->second;
    SftRecord r;
    r.input = seed.question.text;
    r.output = render_think_response(t.target, t.text, seed.answer);
    r.meta = RecordMeta{.question_id = seed.question.id,
                        .thinking_language = t.target,
                        .scenario = seed.question.scenario(),
                        .stage = Stage::step1,
                        .run_id = run_id};
    records.push_back(std::move(r));
  }

  DatasetSummary summary;
  summary.run_id = run_id;
  if (out.has_parent_path())
    std::filesystem::create_directories(out.parent_path());
  JsonlWriter writer(out);
  for (const auto &r : records) {
    writer.write(json(r));
    ++summary.per_language[r.meta.thinking_language->name()];
  }
  writer.flush();
  summary.records = records.size();
  summary.files.push_back(out);
  return summary;
}

} // namespace x1

namespace nlohmann {

x1::SeedTrace adl_serializer<x1::SeedTrace>::from_json(const json &j) {
  return x1::SeedTrace{.question = j.at("question").get<x1::Question>(),
                       .language = j.at("language").get<x1::Language>(),
                       .trace = j.at("trace").get<std::string>(),
                       .answer = j.at("answer").get<std::string>()};
}

void adl_serializer<x1::SeedTrace>::to_json(json &j, const x1::SeedTrace &v) {
  j = json{{"question", v.question},
           {"language", v.language},
           {"trace", v.trace},
           {"answer", v.answer}};
}

x1::TranslatedTrace adl_serializer<x1::TranslatedTrace>::from_json(const json &j) {
  return x1::TranslatedTrace{.seed_id = j.at("seed_id").get<std::string>(),
                             .target = j.at("target").get<x1::Language>(),
                             .text = j.at("text").get<std::string>(),
                             .quality = j.value("quality", 0.0),
                             .kept = j.value("kept", false)};
}

void adl_serializer<x1::TranslatedTrace>::to_json(json &j, const x1::TranslatedTrace &v) {
  j = json{{"seed_id", v.seed_id},
           {"target", v.target},
           {"text", v.text},
           {"quality", v.quality},
           {"kept", v.kept}};
}

} // namespace nlohmann

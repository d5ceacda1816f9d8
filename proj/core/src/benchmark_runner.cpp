#include "x1/benchmark_runner.hpp"

#include "x1/dataset.hpp"
#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/scoring.hpp"
#include "x1/template.hpp"

namespace x1 {

using nlohmann::json;

namespace {

bool judge_correct(const Question &q, const std::string &answer) {
  if (q.gold->kind == GoldAnswer::Kind::numeric)
    return score_math(answer, *q.gold).score == 10.0;
  return choice_correct(answer, *q.gold);
}

} // namespace

SampleResult evaluate_response(const Question &q, const ModelEndpoint &endpoint, int run_index,
                               const ChatOutcome &outcome, const BenchmarkOptions &options) {
  static const LanguageDetector builtin;
  const LanguageDetector &detector = options.detector ? *options.detector : builtin;
  const auto traj = to_trajectory(outcome.raw_text, outcome.truncated_by_guard);

  SampleResult r{.question_id = q.id, .language = quota_group(q), .run_index = run_index};
  r.correct = judge_correct(q, traj.answer);
  r.raw_score = r.correct ? 10.0 : 0.0;
  r.truncated = outcome.truncated_by_guard;

  if (auto marker = parse_response(traj.raw).marker_language)
    r.chosen_think_language = *marker;
  r.switched = r.chosen_think_language && *r.chosen_think_language != endpoint.default_think_language;

  const Language think = options.force_think
                             ? *options.force_think
                             : r.chosen_think_language.value_or(endpoint.default_think_language);
  r.compliance = detector.compliance_flags(traj, think, q.prompt_language);
  r.mixing_rate = detector.mixing_profile(traj.trace, think).mixing_rate;
  return r;
}

std::vector<SampleResult> run_benchmark(const Gateway &gateway, const ModelEndpoint &endpoint,
                                        const std::vector<Question> &questions,
                                        const BenchmarkOptions &options) {
  if (options.runs < 1)
    throw ValidationError("runs must be at least 1");
  for (const auto &q : questions)
    if (!q.gold)
      throw ValidationError("benchmark question " + q.id + " has no gold answer");

  std::vector<ChatRequest> reqs;
  std::vector<std::pair<std::size_t, int>> slots;
  for (int run = 0; run < options.runs; ++run) {
    for (std::size_t i = 0; i < questions.size(); ++i) {
      ChatRequest r;
      r.endpoint = endpoint;
      r.user = questions[i].text;
      r.seed = options.base_seed + static_cast<std::uint64_t>(run);
      if (options.force_think)
        r.forced_prefix = build_think_prefix(*options.force_think);
      reqs.push_back(std::move(r));
      slots.emplace_back(i, run);
    }
  }

  std::vector<SampleResult> results;
  results.reserve(reqs.size());
  gateway.for_each_completion(reqs, options.parallelism, [&](std::size_t k, BatchItem item) {
    const auto &[i, run] = slots[k];
    const auto &q = questions[i];
    if (!item.ok()) {
      SampleResult r{.question_id = q.id, .language = quota_group(q), .run_index = run};
      r.error = item.error;
      results.push_back(std::move(r));
      return;
    }
    results.push_back(evaluate_response(q, endpoint, run, *item.outcome, options));
  });
  return results;
}

json write_results(const std::filesystem::path &dir, const std::string &run_id,
                   const std::vector<SampleResult> &results) {
  std::filesystem::create_directories(dir / "tables");
  {
    JsonlWriter samples(dir / "samples.jsonl");
    for (const auto &r : results) {
      json j = r;
      j["run_id"] = run_id;
      samples.write(j);
    }
  }
  const auto accuracy = mean_at_k(results);
  const auto compliance = compliance_table(results);
  const auto frequency = think_language_frequency(results);
  std::size_t errors = 0, truncated = 0;
  for (const auto &r : results) {
    errors += r.error.has_value();
    truncated += r.truncated;
  }
  json metrics{{"run_id", run_id},
               {"samples", results.size()},
               {"errors", errors},
               {"truncated", truncated},
               {"accuracy", to_json(accuracy)},
               {"compliance", to_json(compliance)},
               {"think_language_frequency", to_json(frequency)}};
  write_text_file(dir / "metrics.json", metrics.dump(2) + "\n");
  write_csv(dir / "tables" / "accuracy.csv", to_csv(accuracy));
  write_csv(dir / "tables" / "compliance.csv", to_csv(compliance));
  write_csv(dir / "tables" / "frequency.csv", to_csv(frequency));
  return metrics;
}

std::vector<SampleResult> read_results(const std::filesystem::path &samples_jsonl) {
  std::vector<SampleResult> out;
  for_each_jsonl(samples_jsonl, [&](std::size_t line, const json &j) {
    try {
      out.push_back(j.get<SampleResult>());
    } catch (const json::exception &e) {
      throw SchemaError(samples_jsonl.string(), line, e.what());
    } catch (const ValidationError &e) {
      throw SchemaError(samples_jsonl.string(), line, e.what());
    }
  });
  return out;
}

} // namespace x1

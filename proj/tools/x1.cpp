#include <CLI11.hpp>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>
#include <iterator>
#include <list>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "x1/benchmark_runner.hpp"
#include "x1/dataset.hpp"
#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/manifest.hpp"
#include "x1/metrics.hpp"
#include "x1/plugin.hpp"
#include "x1/recall.hpp"
#include "x1/repeat_guard.hpp"
#include "x1/step1.hpp"
#include "x1/step2.hpp"
#include "x1/utf8.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace x1;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitEndpoint = 2;
constexpr int kExitUsage = 64;

/// One resolved subcommand call: everything needed to run it again.
struct Invocation {
  std::string command;
  json args = json::object();
  json config;
  std::optional<fs::path> out;
};

/// Shared state of a running command.
struct Context {
  const Invocation &inv;
  RunManifest manifest;

  std::string arg(const char *key) const {
    auto it = inv.args.find(key);
    return it == inv.args.end() || it->is_null() ? std::string{} : it->get<std::string>();
  }
  fs::path out_dir() const {
    if (!inv.out)
      throw ValidationError(inv.command + " needs --out");
    return *inv.out;
  }
  fs::path out(const std::string &name) const { return out_dir() / name; }
  Gateway gateway() const { return Gateway(gateway_options(manifest)); }
  std::size_t parallelism() const { return manifest.parallelism; }
};

// Rows written by the CLI carry the run id of the command that wrote them.
void write_rows(const fs::path &path, const std::vector<json> &rows, const std::string &run_id) {
  fs::create_directories(path.parent_path());
  JsonlWriter w(path);
  for (auto row : rows) {
    row["run_id"] = run_id;
    w.write(row);
  }
}

void write_json(const fs::path &path, const json &j) {
  fs::create_directories(path.parent_path());
  write_text_file(path, j.dump(2) + "\n");
}

template <class T> std::vector<T> read_as(const fs::path &path) {
  std::vector<T> out;
  for_each_jsonl(path, [&](std::size_t line, const json &j) {
    try {
      out.push_back(j.get<T>());
    } catch (const json::exception &e) {
      throw SchemaError(path.string(), line, e.what());
    }
  });
  return out;
}

std::vector<json> issues_json(const std::vector<ItemIssue> &issues) {
  std::vector<json> rows;
  for (const auto &i : issues)
    rows.push_back({{"id", i.id}, {"reason", i.reason}});
  return rows;
}

void report_issues(const std::string &what, const std::vector<ItemIssue> &issues,
                   std::size_t total) {
  for (const auto &i : issues)
    spdlog::warn("{} {}: {}", what, i.id, i.reason);
  if (total > 0 && issues.size() == total)
    throw EndpointUnavailable("all " + std::to_string(total) + " items failed; first: " +
                              issues.front().reason);
}

QuestionKind kind_from_string(const std::string &s) {
  if (s == "math")
    return QuestionKind::math;
  if (s == "culture")
    return QuestionKind::culture;
  if (s == "choice")
    return QuestionKind::choice;
  if (s == "seed")
    return QuestionKind::seed;
  throw ValidationError("unknown --kind '" + s + "' (math|culture|choice|seed)");
}

std::vector<Question> load_questions(const Context &ctx, const char *default_kind) {
  const fs::path in = ctx.arg("in");
  const auto source_name = ctx.arg("source");
  DatasetSource src;
  if (source_name == "mgsm8kinstruct" || source_name == "culturebank") {
    src = builtin_source(source_name, in);
  } else {
    src.name = source_name.empty() ? in.stem().string() : source_name;
    src.path = in;
    const auto kind = ctx.arg("kind");
    src.kind = kind_from_string(kind.empty() ? default_kind : kind);
  }
  auto loaded = load_dataset(src);
  for (const auto &w : loaded.warnings)
    spdlog::warn("{}", w);
  if (auto sample = ctx.inv.args.find("sample"); sample != ctx.inv.args.end() && sample->get<bool>()) {
    if (src.per_language_quota.empty())
      throw ValidationError("--sample needs a built-in --source");
    loaded = sample_quota(loaded.questions, src.per_language_quota, ctx.manifest.seed);
    for (const auto &w : loaded.warnings)
      spdlog::warn("{}", w);
  }
  spdlog::info("loaded {} questions from {}", loaded.questions.size(), in.string());
  return loaded.questions;
}

// --- step1 ------------------------------------------------------------------

void step1_collect(Context &ctx) {
  const auto questions = load_questions(ctx, "seed");
  const auto gw = ctx.gateway();
  const auto result = collect_seed_traces(gw, endpoint_for(ctx.manifest, "backbone"), questions,
                                          ctx.parallelism(), ctx.manifest.seed);
  std::vector<json> rows(result.seeds.begin(), result.seeds.end());
  write_rows(ctx.out("seeds.jsonl"), rows, ctx.manifest.run_id);
  write_rows(ctx.out("excluded.jsonl"), issues_json(result.excluded), ctx.manifest.run_id);
  report_issues("excluded", result.excluded, questions.size());
  spdlog::info("collected {} seed traces", result.seeds.size());
}

std::vector<Language> parse_languages(const std::string &list) {
  std::vector<Language> out;
  if (list.empty()) {
    out.assign(reasoning_languages().begin(), reasoning_languages().end());
    return out;
  }
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty())
      out.push_back(canonical_language(tok));
  return out;
}

void step1_translate(Context &ctx) {
  const auto seeds = read_as<SeedTrace>(ctx.arg("in"));
  ctx.manifest.translation_prompt_version = std::string(kTranslationPromptVersion);
  const auto gw = ctx.gateway();
  const auto batch = translate_traces(gw, endpoint_for(ctx.manifest, "backbone"), seeds,
                                      parse_languages(ctx.arg("languages")), ctx.parallelism(),
                                      ctx.manifest.seed);
  std::vector<json> rows(batch.candidates.begin(), batch.candidates.end());
  write_rows(ctx.out("translations.jsonl"), rows, ctx.manifest.run_id);
  write_rows(ctx.out("translation_failures.jsonl"), issues_json(batch.failed),
             ctx.manifest.run_id);
  report_issues("translation failed", batch.failed, batch.failed.size() + batch.candidates.size());
  spdlog::info("{} candidate translations", batch.candidates.size());
}

void step1_filter(Context &ctx) {
  auto candidates = read_as<TranslatedTrace>(ctx.arg("in"));
  const auto seeds = read_as<SeedTrace>(ctx.arg("seeds"));
  std::unique_ptr<QualityScorer> scorer;
  if (const auto cmd = ctx.arg("scorer_plugin"); !cmd.empty())
    scorer = std::make_unique<PluginQualityScorer>(std::make_shared<JsonLinePlugin>(cmd));
  else
    scorer = std::make_unique<HeuristicQualityScorer>();
  const auto scored =
      filter_quality(std::move(candidates), seeds, *scorer, ctx.manifest.quality_threshold);
  std::vector<json> all, discarded;
  for (const auto &t : scored) {
    all.push_back(t);
    if (!t.kept)
      discarded.push_back(t);
  }
  write_rows(ctx.out("filtered.jsonl"), all, ctx.manifest.run_id);
  write_rows(ctx.out("discarded.jsonl"), discarded, ctx.manifest.run_id);
  spdlog::info("kept {} of {} translations at threshold {}", all.size() - discarded.size(),
               all.size(), ctx.manifest.quality_threshold);
}

void step1_emit(Context &ctx) {
  const auto translations = read_as<TranslatedTrace>(ctx.arg("in"));
  const auto seeds = read_as<SeedTrace>(ctx.arg("seeds"));
  const auto summary =
      emit_step1_dataset(translations, seeds, ctx.out("step1_sft.jsonl"), ctx.manifest.run_id);
  write_json(ctx.out("step1_summary.json"), to_json(summary));
  spdlog::info("wrote {} step-1 records", summary.records);
}

// --- step2 ------------------------------------------------------------------

void step2_pair(Context &ctx) {
  const auto questions = load_questions(ctx, "math");
  const auto gw = ctx.gateway();
  PairOptions options{.pivot = ctx.manifest.pivot,
                      .detect_default = ctx.manifest.detect_default,
                      .seed = ctx.manifest.seed,
                      .run_id = ctx.manifest.run_id};
  const auto batch =
      generate_pairs(gw, endpoint_for(ctx.manifest, "backbone"),
                     endpoint_for(ctx.manifest, "surface"), questions, options, ctx.parallelism());
  std::vector<json> rows(batch.pairs.begin(), batch.pairs.end());
  write_rows(ctx.out("pairs.jsonl"), rows, ctx.manifest.run_id);
  write_rows(ctx.out("skipped.jsonl"), issues_json(batch.skipped), ctx.manifest.run_id);
  report_issues("skipped", batch.skipped, questions.size());
  spdlog::info("{} trajectory pairs", batch.pairs.size());
}

void step2_judge(Context &ctx) {
  const auto pairs = read_as<TrajectoryPair>(ctx.arg("in"));
  const auto gw = ctx.gateway();
  std::optional<ModelEndpoint> judge;
  if (ctx.manifest.endpoints.contains("judge"))
    judge = endpoint_for(ctx.manifest, "judge");
  std::vector<json> rows;
  std::vector<ItemIssue> failed;
  for (const auto &p : pairs) {
    try {
      auto v = identify_advantageous(p, gw, judge, ctx.manifest.seed);
      v.pair.run_id = ctx.manifest.run_id;
      rows.push_back(v);
    } catch (const JudgeUnparseable &e) {
      failed.push_back({p.pair_id(), e.what()});
    }
  }
  write_rows(ctx.out("verdicts.jsonl"), rows, ctx.manifest.run_id);
  write_rows(ctx.out("judge_failures.jsonl"), issues_json(failed), ctx.manifest.run_id);
  report_issues("judge failed", failed, pairs.size());
  spdlog::info("{} verdicts", rows.size());
}

void step2_emit(Context &ctx) {
  const auto verdicts = read_as<Verdict>(ctx.arg("in"));
  const auto summary = emit_step2_datasets(
      verdicts, ctx.out_dir(),
      {.run_id = ctx.manifest.run_id, .awareness_ratio = ctx.manifest.awareness_ratio});
  spdlog::info("{} wins, {} ties dropped", summary.records, summary.ties);
}

// --- eval -------------------------------------------------------------------

std::unique_ptr<LanguageDetector> make_detector(const Context &ctx) {
  if (const auto cmd = ctx.arg("langid_plugin"); !cmd.empty())
    return std::make_unique<LanguageDetector>(std::make_shared<JsonLinePlugin>(cmd));
  return std::make_unique<LanguageDetector>();
}

void eval_run(Context &ctx) {
  const auto questions = load_questions(ctx, "math");
  const auto gw = ctx.gateway();
  const auto detector = make_detector(ctx);
  BenchmarkOptions options{.runs = ctx.manifest.runs,
                           .base_seed = ctx.manifest.seed,
                           .parallelism = ctx.parallelism(),
                           .detector = detector.get()};
  if (const auto lang = ctx.arg("force_think"); !lang.empty())
    options.force_think = canonical_language(lang);
  const auto results = run_benchmark(gw, endpoint_for(ctx.manifest, "backbone"), questions, options);
  std::size_t errors = 0;
  for (const auto &r : results)
    errors += r.error.has_value();
  const auto metrics = write_results(ctx.out_dir(), ctx.manifest.run_id, results);
  if (!results.empty() && errors == results.size())
    throw EndpointUnavailable("every benchmark call failed; first: " + *results.front().error);
  if (errors > 0)
    spdlog::warn("{} of {} samples failed and were scored incorrect", errors, results.size());
  std::cout << metrics.dump(2) << "\n";
}

void eval_aggregate(Context &ctx) {
  const auto results = read_results(ctx.arg("in"));
  std::cout << write_results(ctx.out_dir(), ctx.manifest.run_id, results).dump(2) << "\n";
}

// Analysis result plus its CSV form when the metric has one.
struct Analysis {
  json value;
  std::optional<CsvTable> table;
};

std::vector<SampleResult> results_arg(const Context &ctx, const char *key) {
  const auto path = ctx.arg(key);
  if (path.empty())
    throw ValidationError(std::string("--") + key + " is required for this metric");
  return read_results(path);
}

Analysis analyze_votes(const Context &ctx) {
  json rows = json::array();
  std::size_t correct = 0, graded = 0;
  for_each_jsonl(ctx.arg("in"), [&](std::size_t line, const json &j) {
    std::map<Language, std::string> answers;
    std::optional<GoldAnswer> gold;
    try {
      for (const auto &[lang, text] : j.at("answers").items())
        answers.emplace(canonical_language(lang), text.get<std::string>());
      if (auto g = j.find("gold"); g != j.end() && !g->is_null())
        gold = g->get<GoldAnswer>();
    } catch (const json::exception &e) {
      throw SchemaError(ctx.arg("in"), line, e.what());
    }
    json row{{"question_id", j.value("question_id", std::to_string(line))}};
    try {
      const auto v = majority_vote(answers, gold);
      row["vote"] = to_json(v);
      if (gold) {
        ++graded;
        correct += v.correct;
      }
    } catch (const AllVotesInvalid &e) {
      row["error"] = e.what();
      graded += gold.has_value();
    }
    rows.push_back(std::move(row));
  });
  json out{{"votes", rows}, {"graded", graded}};
  if (graded > 0)
    out["accuracy"] = 100.0 * static_cast<double>(correct) / static_cast<double>(graded);
  return {out, std::nullopt};
}

Analysis analyze_recall(const Context &ctx) {
  const auto gw = ctx.gateway();
  const auto &judge = endpoint_for(ctx.manifest, "judge");
  std::vector<RecallResult> results;
  json rows = json::array();
  for_each_jsonl(ctx.arg("in"), [&](std::size_t line, const json &j) {
    Question q = [&] {
      try {
        return j.at("question").get<Question>();
      } catch (const json::exception &e) {
        throw SchemaError(ctx.arg("in"), line, e.what());
      }
    }();
    auto r = recall_analysis(gw, judge, q, j.value("gold_answer", std::string{}),
                             j.value("reasoning", std::string{}), ctx.manifest.seed);
    rows.push_back(to_json(r));
    results.push_back(std::move(r));
  });
  return {{{"stats", to_json(recall_stats(results))}, {"results", rows}}, std::nullopt};
}

Analysis analyze(const Context &ctx) {
  const auto metric = ctx.arg("metric");
  if (metric == "wtl") {
    const auto r = win_tie_lose(results_arg(ctx, "base"), results_arg(ctx, "alt"));
    return {to_json(r), to_csv(r)};
  }
  if (metric == "benefit") {
    const auto r = benefit_harm(results_arg(ctx, "base"), results_arg(ctx, "alt"));
    return {to_json(r), to_csv(r)};
  }
  if (metric == "mixing") {
    const auto r = mixing_benefit_report(results_arg(ctx, "base"), results_arg(ctx, "alt"));
    return {to_json(r), to_csv(r)};
  }
  if (metric == "frequency") {
    std::optional<std::map<Language, double>> accuracy;
    if (!ctx.arg("base").empty())
      accuracy = mean_at_k(results_arg(ctx, "base")).per_language;
    const auto r = think_language_frequency(results_arg(ctx, "in"), accuracy);
    return {to_json(r), to_csv(r)};
  }
  if (metric == "std") {
    const auto t = mean_at_k(results_arg(ctx, "in"));
    auto j = to_json(t);
    j["std"] = cross_language_std(t.per_language);
    auto table = to_csv(t);
    table.push_back({"std", format_number(j["std"].get<double>())});
    return {j, table};
  }
  if (metric == "compliance") {
    const auto r = compliance_table(results_arg(ctx, "in"));
    return {to_json(r), to_csv(r)};
  }
  if (metric == "vote")
    return analyze_votes(ctx);
  if (metric == "recall")
    return analyze_recall(ctx);
  throw ValidationError("unknown metric '" + metric + "'");
}

void eval_analyze(Context &ctx) {
  auto result = analyze(ctx);
  result.value["run_id"] = ctx.manifest.run_id;
  result.value["metric"] = ctx.arg("metric");
  std::cout << result.value.dump(2) << "\n";
  if (ctx.inv.out) {
    const auto stem = "analysis_" + ctx.arg("metric");
    write_json(ctx.out(stem + ".json"), result.value);
    if (result.table)
      write_csv(ctx.out(stem + ".csv"), *result.table);
  }
}

// --- guard ------------------------------------------------------------------

void guard(Context &ctx) {
  const auto in = ctx.arg("in");
  std::string text;
  if (in.empty() || in == "-")
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  else
    text = read_text_file(in);
  const std::size_t block = ctx.inv.args.value("block_size", ctx.manifest.guard_block);
  const std::size_t prompt_len = ctx.inv.args.value("prompt_len", std::size_t{0});
  const auto r = truncate_text(text, prompt_len, block);
  std::cout << r.kept;
  std::cout.flush();
  if (r.was_truncated)
    spdlog::info("truncated at character {}", utf8::length(r.kept));
  if (ctx.inv.out)
    write_json(ctx.out("guard.json"), {{"run_id", ctx.manifest.run_id},
                                       {"block_size", block},
                                       {"prompt_len", prompt_len},
                                       {"was_truncated", r.was_truncated},
                                       {"kept", r.kept}});
}

// --- dispatch ---------------------------------------------------------------

using Handler = void (*)(Context &);

const std::map<std::string, Handler> &handlers() {
  static const std::map<std::string, Handler> h{
      {"step1 collect", step1_collect}, {"step1 translate", step1_translate},
      {"step1 filter", step1_filter},   {"step1 emit", step1_emit},
      {"step2 pair", step2_pair},       {"step2 judge", step2_judge},
      {"step2 emit", step2_emit},       {"eval run", eval_run},
      {"eval aggregate", eval_aggregate}, {"eval analyze", eval_analyze},
      {"guard", guard},
  };
  return h;
}

// Input files whose hashes go into the manifest.
std::map<std::string, fs::path> dataset_args(const json &args) {
  std::map<std::string, fs::path> out;
  for (const char *key : {"in", "seeds", "base", "alt"})
    if (auto it = args.find(key); it != args.end() && it->is_string() &&
                                  !it->get<std::string>().empty() &&
                                  it->get<std::string>() != "-")
      out.emplace(key, it->get<std::string>());
  return out;
}

void execute(const Invocation &inv) {
  auto config = inv.config;
  config["args"] = inv.args;
  Context ctx{inv, make_manifest(inv.command, config, dataset_args(inv.args))};
  spdlog::info("{} run_id={} mode={}", inv.command, ctx.manifest.run_id,
               to_string(ctx.manifest.mode));
  handlers().at(inv.command)(ctx);
  if (inv.out)
    write_manifest(*inv.out, ctx.manifest);
}

/// Rebuilds the invocation recorded in a manifest and runs it in replay mode.
void replay(const fs::path &manifest_path, const fs::path &out,
            const std::optional<std::string> &fixtures) {
  const auto path = fs::is_directory(manifest_path) ? manifest_path / "manifest.json" : manifest_path;
  const auto m = manifest_from_json(json::parse(read_text_file(path)));
  if (!handlers().contains(m.command))
    throw ValidationError("manifest command '" + m.command + "' cannot be replayed");
  json endpoints = json::object();
  for (const auto &[role, ep] : m.endpoints)
    endpoints[role] = ep;
  Invocation inv;
  inv.command = m.command;
  inv.args = m.args;
  inv.out = out;
  inv.config = default_config();
  inv.config.merge_patch(json{{"run_id", m.run_id},
                              {"seed", m.seed},
                              {"mode", "replay"},
                              {"fixtures", fixtures.value_or(m.fixtures.string())},
                              {"parallelism", m.parallelism},
                              {"quality_threshold", m.quality_threshold},
                              {"guard_block", m.guard_block},
                              {"runs", m.runs},
                              {"awareness_ratio", m.awareness_ratio},
                              {"detect_default", m.detect_default},
                              {"endpoints", endpoints}});
  inv.config["pivot"] = m.pivot ? json(m.pivot->name()) : json(nullptr);
  execute(inv);
}

} // namespace

int main(int argc, char **argv) {
  auto logger = spdlog::stderr_color_mt("x1");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Multilingual thinking-language data builder and evaluation harness"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  std::optional<std::string> config_file, mode, fixtures, pivot, run_id;
  std::optional<std::size_t> parallelism, guard_block;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<double> threshold, awareness_ratio;
  bool no_detect = false, verbose = false;
  std::optional<std::string> out;

  app.add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "live | record | replay");
  app.add_option("--fixtures", fixtures, "fixture store for record/replay");
  app.add_option("--parallelism", parallelism, "requests in flight");
  app.add_option("--seed", seed, "base sampling seed");
  app.add_option("--runs", runs, "benchmark runs per question");
  app.add_option("--guard-block", guard_block, "repeat-guard block size");
  app.add_option("--quality-threshold", threshold, "translation quality cut-off");
  app.add_option("--awareness-ratio", awareness_ratio, "share of wins with an awareness record");
  app.add_option("--pivot", pivot, "non-English pivot for English prompts");
  app.add_option("--run-id", run_id, "explicit run id");
  app.add_flag("--no-detect-default", no_detect, "use the configured default thinking language");
  app.add_flag("-v,--verbose", verbose, "debug logging");
  app.add_option("--out", out, "output directory");

  Invocation inv;
  json &args = inv.args;
  struct StringArg {
    CLI::App *sub;
    std::string key;
    std::string value;
  };
  std::list<StringArg> strs;
  std::optional<std::size_t> block_size, prompt_len;
  bool sample = false;

  auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &desc) {
    auto *sub = parent->add_subcommand(name, desc);
    sub->fallthrough();
    sub->callback([&, sub, parent] {
      inv.command = (parent == &app ? "" : parent->get_name() + " ") + sub->get_name();
    });
    return sub;
  };
  auto str = [&](CLI::App *sub, const std::string &flag, const std::string &key,
                 const std::string &desc, bool required = false) {
    auto &slot = strs.emplace_back(StringArg{sub, key, {}});
    auto *opt = sub->add_option(flag, slot.value, desc);
    if (required)
      opt->required();
  };
  auto input_options = [&](CLI::App *sub) {
    str(sub, "--in", "in", "question file (JSONL)", true);
    str(sub, "--kind", "kind", "math | culture | choice | seed");
    str(sub, "--source", "source", "dataset name; mgsm8kinstruct and culturebank apply quotas");
    sub->add_flag("--sample", sample, "sample the built-in per-language quota");
  };

  auto *step1 = app.add_subcommand("step1", "build the multilingual reasoning dataset");
  step1->require_subcommand(1);
  step1->fallthrough();
  {
    auto *s = leaf(step1, "collect", "collect seed traces from the backbone");
    input_options(s);
    s = leaf(step1, "translate", "translate seed traces into the reasoning languages");
    str(s, "--in", "in", "seeds.jsonl", true);
    str(s, "--languages", "languages", "comma-separated targets (default: all reasoning languages)");
    s = leaf(step1, "filter", "score translations and apply the quality threshold");
    str(s, "--in", "in", "translations.jsonl", true);
    str(s, "--seeds", "seeds", "seeds.jsonl", true);
    str(s, "--scorer-plugin", "scorer_plugin", "external quality-estimation command");
    s = leaf(step1, "emit", "write the step-1 SFT file");
    str(s, "--in", "in", "filtered.jsonl", true);
    str(s, "--seeds", "seeds", "seeds.jsonl", true);
  }

  auto *step2 = app.add_subcommand("step2", "build the advantageous-language datasets");
  step2->require_subcommand(1);
  step2->fallthrough();
  {
    auto *s = leaf(step2, "pair", "generate default and contrast trajectories");
    input_options(s);
    s = leaf(step2, "judge", "score both trajectories and pick the winner");
    str(s, "--in", "in", "pairs.jsonl", true);
    s = leaf(step2, "emit", "write SFT, awareness and DPO files");
    str(s, "--in", "in", "verdicts.jsonl", true);
  }

  auto *eval = app.add_subcommand("eval", "benchmarks and analyses");
  eval->require_subcommand(1);
  eval->fallthrough();
  {
    auto *s = leaf(eval, "run", "query a benchmark and score it");
    input_options(s);
    str(s, "--force-think", "force_think", "force this thinking language");
    str(s, "--langid-plugin", "langid_plugin", "external language-identification command");
    s = leaf(eval, "aggregate", "recompute metrics and tables from samples.jsonl");
    str(s, "--in", "in", "samples.jsonl", true);
    s = leaf(eval, "analyze", "compute one analysis");
    str(s, "--metric", "metric", "wtl|benefit|mixing|frequency|std|compliance|vote|recall", true);
    str(s, "--base", "base", "baseline samples.jsonl");
    str(s, "--alt", "alt", "alternative samples.jsonl");
    str(s, "--in", "in", "samples.jsonl, votes.jsonl or recall input");
    s->get_option("--metric")->check(
        CLI::IsMember({"wtl", "benefit", "mixing", "frequency", "std", "compliance", "vote", "recall"}));
  }

  {
    auto *s = leaf(&app, "guard", "apply repetition truncation to a text");
    str(s, "--in", "in", "input file (default stdin)");
    s->add_option("--block-size", block_size, "block size B");
    s->add_option("--prompt-len", prompt_len, "leading characters to skip");
  }

  std::string manifest_path;
  auto *rep = app.add_subcommand("replay", "re-run a recorded manifest offline");
  rep->fallthrough();
  rep->add_option("--manifest", manifest_path, "manifest.json or its directory")->required();
  rep->callback([&] { inv.command = "replay"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (verbose)
    spdlog::set_level(spdlog::level::debug);

  for (const auto &a : strs)
    if (a.sub->parsed() && !a.value.empty())
      args[a.key] = a.value;
  if (block_size)
    args["block_size"] = *block_size;
  if (prompt_len)
    args["prompt_len"] = *prompt_len;
  if (sample)
    args["sample"] = true;
  if (out)
    inv.out = *out;

  try {
    if (inv.command == "replay") {
      if (!inv.out)
        throw ValidationError("replay needs --out");
      if (fixtures)
        fixtures = fs::absolute(*fixtures).lexically_normal().string();
      replay(manifest_path, *inv.out, fixtures);
      return kExitOk;
    }
    json overrides = json::object();
    if (mode)
      overrides["mode"] = *mode;
    if (fixtures)
      overrides["fixtures"] = fs::absolute(*fixtures).lexically_normal().string();
    if (parallelism)
      overrides["parallelism"] = *parallelism;
    if (seed)
      overrides["seed"] = *seed;
    if (runs)
      overrides["runs"] = *runs;
    if (guard_block)
      overrides["guard_block"] = *guard_block;
    if (threshold)
      overrides["quality_threshold"] = *threshold;
    if (awareness_ratio)
      overrides["awareness_ratio"] = *awareness_ratio;
    if (pivot)
      overrides["pivot"] = *pivot;
    if (run_id)
      overrides["run_id"] = *run_id;
    if (no_detect)
      overrides["detect_default"] = false;
    inv.config = resolve_config(config_file ? std::optional<fs::path>(*config_file) : std::nullopt,
                                overrides);
    execute(inv);
    return kExitOk;
  } catch (const EndpointUnavailable &e) {
    spdlog::error("{}", e.what());
    return kExitEndpoint;
  } catch (const FixtureMiss &e) {
    spdlog::error("{}", e.what());
    return kExitEndpoint;
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  }
}

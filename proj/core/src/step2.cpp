#include "x1/step2.hpp"

#include <algorithm>
#include <cstdlib>

#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/langid.hpp"
#include "x1/scoring.hpp"
#include "x1/template.hpp"

namespace x1 {

using nlohmann::json;

std::string to_string(Winner w) {
  switch (w) {
  case Winner::default_side:
    return "default";
  case Winner::contrast:
    return "contrast";
  case Winner::tie:
    break;
  }
  return "tie";
}

Winner winner_from_string(std::string_view s) {
  if (s == "default")
    return Winner::default_side;
  if (s == "contrast")
    return Winner::contrast;
  if (s == "tie")
    return Winner::tie;
  throw ValidationError("unknown winner '" + std::string(s) + "'");
}

Winner decide(double default_score, double contrast_score) {
  if (default_score > contrast_score)
    return Winner::default_side;
  if (contrast_score > default_score)
    return Winner::contrast;
  return Winner::tie;
}

Language contrast_language_for(const Question &q, Language default_lang,
                               std::optional<Language> pivot) {
  const Language en = english();
  if (default_lang != en)
    return en;
  Language natural = q.prompt_language;
  if (q.scenario() == Scenario::culture) {
    if (!q.country)
      throw ValidationError("culture question " + q.id + " has no country");
    natural = culture_language_for(*q.country);
  }
  if (natural != en)
    return natural;
  if (pivot && *pivot != en)
    return *pivot;
  throw NoPivotAvailable("no non-English pivot for " + q.id);
}

Language default_language_of(const Trajectory &t, const ModelEndpoint &backbone,
                             const PairOptions &options) {
  if (!options.detect_default)
    return backbone.default_think_language;
  if (auto marker = parse_response(t.raw).marker_language)
    return *marker;
  if (auto guess = LanguageDetector().try_detect(t.trace);
      guess && guess->confidence >= options.min_detect_confidence)
    return guess->language;
  return backbone.default_think_language;
}

namespace {

ChatRequest default_request(const ModelEndpoint &backbone, const Question &q,
                            std::uint64_t seed) {
  ChatRequest r;
  r.endpoint = backbone;
  r.user = q.text;
  r.seed = seed;
  return r;
}

ChatRequest contrast_request(const ModelEndpoint &surface, const Question &q,
                             Language lang, std::uint64_t seed) {
  ChatRequest r;
  r.endpoint = surface;
  r.user = q.text;
  r.forced_prefix = build_think_prefix(lang);
  r.seed = seed;
  return r;
}

Trajectory checked_contrast(const ChatOutcome &outcome, Language lang, const Question &q) {
  auto t = to_trajectory(outcome.raw_text, outcome.truncated_by_guard);
  if (parse_response(t.raw).marker_language != lang)
    throw MalformedTrajectory("contrast response for " + q.id + " lacks the " +
                              start_marker(lang) + " prefix");
  // A model that restarts its trace under another marker did not follow the prefix.
  for (Language other : all_languages())
    if (other != lang && t.raw.find(end_marker(other)) != std::string::npos)
      throw MalformedTrajectory("contrast response for " + q.id + " closes with " +
                                end_marker(other));
  return t;
}

} // namespace

TrajectoryPair generate_pair(const Gateway &gateway, const ModelEndpoint &backbone,
                             const ModelEndpoint &surface, const Question &q,
                             const PairOptions &options) {
  const auto d = gateway.complete(default_request(backbone, q, options.seed));
  auto default_traj = to_trajectory(d.raw_text, d.truncated_by_guard);
  const Language default_lang = default_language_of(default_traj, backbone, options);
  const Language contrast_lang = contrast_language_for(q, default_lang, options.pivot);
  const auto c = gateway.complete(contrast_request(surface, q, contrast_lang, options.seed));
  return TrajectoryPair{.question = q,
                        .default_traj = std::move(default_traj),
                        .contrast_traj = checked_contrast(c, contrast_lang, q),
                        .default_lang = default_lang,
                        .contrast_lang = contrast_lang,
                        .run_id = options.run_id};
}

PairBatch generate_pairs(const Gateway &gateway, const ModelEndpoint &backbone,
                         const ModelEndpoint &surface, const std::vector<Question> &questions,
                         const PairOptions &options, std::size_t parallelism) {
  PairBatch out;
  struct Pending {
    std::size_t question;
    Trajectory default_traj;
    Language default_lang;
    Language contrast_lang;
  };
  std::vector<Pending> pending;

  std::vector<ChatRequest> defaults;
  for (const auto &q : questions)
    defaults.push_back(default_request(backbone, q, options.seed));
  gateway.for_each_completion(defaults, parallelism, [&](std::size_t i, BatchItem item) {
    const auto &q = questions[i];
    if (!item.ok()) {
      out.skipped.push_back({q.id, item.error});
      return;
    }
    auto traj = to_trajectory(item.outcome->raw_text, item.outcome->truncated_by_guard);
    const Language dl = default_language_of(traj, backbone, options);
    try {
      const Language cl = contrast_language_for(q, dl, options.pivot);
      pending.push_back({i, std::move(traj), dl, cl});
    } catch (const ValidationError &e) {
      out.skipped.push_back({q.id, e.what()});
    }
  });

  std::vector<ChatRequest> contrasts;
  for (const auto &p : pending)
    contrasts.push_back(
        contrast_request(surface, questions[p.question], p.contrast_lang, options.seed));
  gateway.for_each_completion(contrasts, parallelism, [&](std::size_t i, BatchItem item) {
    auto &p = pending[i];
    const auto &q = questions[p.question];
    if (!item.ok()) {
      out.skipped.push_back({q.id, item.error});
      return;
    }
    try {
      out.pairs.push_back(TrajectoryPair{.question = q,
                                         .default_traj = std::move(p.default_traj),
                                         .contrast_traj =
                                             checked_contrast(*item.outcome, p.contrast_lang, q),
                                         .default_lang = p.default_lang,
                                         .contrast_lang = p.contrast_lang,
                                         .run_id = options.run_id});
    } catch (const MalformedTrajectory &e) {
      out.skipped.push_back({q.id, e.what()});
    }
  });
  return out;
}

Judgment score_trajectory_math(const Question &q, const Trajectory &t) {
  if (!q.gold)
    throw ValidationError("question " + q.id + " has no gold answer");
  if (q.gold->kind == GoldAnswer::Kind::numeric)
    return score_math(t.answer, *q.gold);
  Judgment j;
  j.method = JudgeMethod::math_exact;
  j.score = choice_correct(t.answer, *q.gold) ? 10.0 : 0.0;
  return j;
}

Verdict identify_advantageous(const TrajectoryPair &pair, const Gateway &gateway,
                              const std::optional<ModelEndpoint> &judge,
                              std::uint64_t seed) {
  Verdict v{.pair = pair, .default_score = {}, .contrast_score = {}};
  if (pair.question.scenario() == Scenario::math) {
    v.default_score = score_trajectory_math(pair.question, pair.default_traj);
    v.contrast_score = score_trajectory_math(pair.question, pair.contrast_traj);
  } else {
    if (!judge)
      throw ValidationError("culture question " + pair.question.id + " needs a judge endpoint");
    v.default_score = score_culture(gateway, *judge, pair.question, pair.default_traj.answer, seed);
    v.contrast_score =
        score_culture(gateway, *judge, pair.question, pair.contrast_traj.answer, seed);
  }
  v.winner = decide(v.default_score.score, v.contrast_score.score);
  return v;
}

namespace {

bool awareness_selected(const std::string &question_id, double ratio) {
  if (ratio >= 1.0)
    return true;
  if (ratio <= 0.0)
    return false;
  const auto h = sha256_hex(question_id).substr(0, 8);
  const double u = static_cast<double>(std::strtoul(h.c_str(), nullptr, 16)) / 4294967296.0;
  return u < ratio;
}

} // namespace

DatasetSummary emit_step2_datasets(std::vector<Verdict> verdicts,
                                   const std::filesystem::path &out_dir,
                                   const Step2EmitOptions &options) {
  const Language en = english();
  for (const auto &v : verdicts) {
    if ((v.pair.default_lang == en) == (v.pair.contrast_lang == en))
      throw ValidationError("pair " + v.pair_id() + " must have exactly one English side");
    if (v.winner != decide(v.default_score.score, v.contrast_score.score))
      throw ValidationError("verdict " + v.pair_id() + " disagrees with its scores");
  }
  std::stable_sort(verdicts.begin(), verdicts.end(),
                   [](const Verdict &a, const Verdict &b) { return a.pair_id() < b.pair_id(); });

  std::filesystem::create_directories(out_dir);
  JsonlWriter sft(out_dir / kStep2SftFile);
  JsonlWriter awareness(out_dir / kStep2AwarenessFile);
  JsonlWriter dpo(out_dir / kStep2DpoFile);

  DatasetSummary summary;
  summary.run_id = options.run_id;
  for (const auto &v : verdicts) {
    const auto &q = v.pair.question;
    const Language pivot = v.pair.default_lang == en ? v.pair.contrast_lang : v.pair.default_lang;
    if (v.winner == Winner::tie) {
      ++summary.ties;
      ++summary.ties_per_language[pivot.name()];
      continue;
    }
    const bool contrast_won = v.winner == Winner::contrast;
    const auto &win = contrast_won ? v.pair.contrast_traj : v.pair.default_traj;
    const auto &lose = contrast_won ? v.pair.default_traj : v.pair.contrast_traj;
    const Language win_lang = contrast_won ? v.pair.contrast_lang : v.pair.default_lang;
    const Language lose_lang = contrast_won ? v.pair.default_lang : v.pair.contrast_lang;
    const auto &win_score = contrast_won ? v.contrast_score : v.default_score;
    const auto &lose_score = contrast_won ? v.default_score : v.contrast_score;

    const RecordMeta meta{.question_id = q.id,
                          .thinking_language = win_lang,
                          .scenario = q.scenario(),
                          .stage = Stage::step2,
                          .run_id = options.run_id};
    const auto chosen = render_think_response(win_lang, win.trace, win.answer);

    sft.write(json(SftRecord{.input = q.text, .output = chosen, .meta = meta}));
    ++summary.records;
    ++summary.per_language[win_lang.name()];

    if (awareness_selected(q.id, options.awareness_ratio)) {
      awareness.write(json(render_awareness_record(q, win_lang, options.run_id)));
      ++summary.awareness_records;
    }

    dpo.write(json(DpoRecord{.prompt = q.text,
                             .chosen = chosen,
                             .rejected = render_think_response(lose_lang, lose.trace, lose.answer),
                             .meta = meta,
                             .rejected_language = lose_lang,
                             .chosen_score = win_score.score,
                             .rejected_score = lose_score.score}));
    ++summary.dpo_records;
  }
  sft.flush();
  awareness.flush();
  dpo.flush();

  summary.files = {out_dir / kStep2SftFile, out_dir / kStep2AwarenessFile,
                   out_dir / kStep2DpoFile, out_dir / kStep2SummaryFile};
  write_text_file(out_dir / kStep2SummaryFile, to_json(summary).dump(2) + "\n");
  return summary;
}

} // namespace x1

namespace nlohmann {

namespace {

json pair_fields(const x1::TrajectoryPair &p) {
  return json{{"pair_id", p.pair_id()},
              {"run_id", p.run_id},
              {"question", p.question},
              {"default_lang", p.default_lang},
              {"contrast_lang", p.contrast_lang},
              {"default_traj", p.default_traj},
              {"contrast_traj", p.contrast_traj}};
}

} // namespace

x1::TrajectoryPair adl_serializer<x1::TrajectoryPair>::from_json(const json &j) {
  return x1::TrajectoryPair{.question = j.at("question").get<x1::Question>(),
                            .default_traj = j.at("default_traj").get<x1::Trajectory>(),
                            .contrast_traj = j.at("contrast_traj").get<x1::Trajectory>(),
                            .default_lang = j.at("default_lang").get<x1::Language>(),
                            .contrast_lang = j.at("contrast_lang").get<x1::Language>(),
                            .run_id = j.value("run_id", std::string{})};
}

void adl_serializer<x1::TrajectoryPair>::to_json(json &j, const x1::TrajectoryPair &v) {
  j = pair_fields(v);
}

x1::Verdict adl_serializer<x1::Verdict>::from_json(const json &j) {
  return x1::Verdict{.pair = j.get<x1::TrajectoryPair>(),
                     .default_score = j.at("default_score").get<x1::Judgment>(),
                     .contrast_score = j.at("contrast_score").get<x1::Judgment>(),
                     .winner = x1::winner_from_string(j.at("winner").get<std::string>())};
}

void adl_serializer<x1::Verdict>::to_json(json &j, const x1::Verdict &v) {
  j = pair_fields(v.pair);
  j["default_score"] = v.default_score;
  j["contrast_score"] = v.contrast_score;
  j["winner"] = x1::to_string(v.winner);
}

} // namespace nlohmann

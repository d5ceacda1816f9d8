#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "x1/dataset.hpp"
#include "x1/gateway.hpp"
#include "x1/step1.hpp"
#include "x1/types.hpp"

namespace x1 {

struct TrajectoryPair {
  Question question;
  Trajectory default_traj;
  Trajectory contrast_traj;
  Language default_lang;
  Language contrast_lang;
  std::string run_id;

  const std::string &pair_id() const noexcept { return question.id; }
};

enum class Winner { default_side, contrast, tie };

std::string to_string(Winner w);
Winner winner_from_string(std::string_view s);

struct Verdict {
  TrajectoryPair pair;
  Judgment default_score;
  Judgment contrast_score;
  Winner winner = Winner::tie;

  const std::string &pair_id() const noexcept { return pair.pair_id(); }
};

/// Winner by strict comparison; only exact equality is a tie.
Winner decide(double default_score, double contrast_score);

/// English default → the non-English pivot (math: the prompt language, or
/// `pivot` for English prompts; culture: the country's language group, or
/// `pivot` when that is English). Non-English default → English.
/// Throws NoPivotAvailable.
Language contrast_language_for(const Question &q, Language default_lang,
                               std::optional<Language> pivot = std::nullopt);

struct PairOptions {
  std::optional<Language> pivot;
  /// Read the default trajectory's language from its trace (marker first,
  /// then the detector); the backbone's configured default otherwise.
  bool detect_default = true;
  double min_detect_confidence = 0.5;
  std::uint64_t seed = 0;
  std::string run_id;
};

/// Language the default trajectory reasoned in.
Language default_language_of(const Trajectory &t, const ModelEndpoint &backbone,
                             const PairOptions &options);

/// Default trajectory from the backbone (no prefix) and contrast trajectory
/// from the surface reasoner forced with the contrast language's prefix.
/// Throws MalformedTrajectory when the contrast response lacks the prefix.
TrajectoryPair generate_pair(const Gateway &gateway, const ModelEndpoint &backbone,
                             const ModelEndpoint &surface, const Question &q,
                             const PairOptions &options = {});

struct PairBatch {
  std::vector<TrajectoryPair> pairs;
  std::vector<ItemIssue> skipped;
};

/// Batched generate_pair: all default calls, then all contrast calls.
PairBatch generate_pairs(const Gateway &gateway, const ModelEndpoint &backbone,
                         const ModelEndpoint &surface, const std::vector<Question> &questions,
                         const PairOptions &options = {}, std::size_t parallelism = 1);

/// Scores both sides (math: exact match or option label; culture: judge)
/// and picks the winner. `judge` is required for culture questions.
Verdict identify_advantageous(const TrajectoryPair &pair, const Gateway &gateway,
                              const std::optional<ModelEndpoint> &judge,
                              std::uint64_t seed = 0);

/// Math questions only need the pair; no gateway involved.
Judgment score_trajectory_math(const Question &q, const Trajectory &t);

struct Step2EmitOptions {
  std::string run_id;
  /// Fraction of wins that also get a self-awareness record, picked by a
  /// hash of the question id.
  double awareness_ratio = 1.0;
};

inline constexpr const char *kStep2SftFile = "step2_sft.jsonl";
inline constexpr const char *kStep2AwarenessFile = "step2_awareness.jsonl";
inline constexpr const char *kStep2DpoFile = "step2_dpo.jsonl";
inline constexpr const char *kStep2SummaryFile = "step2_summary.json";

/// Drops ties; writes one SFT, awareness and DPO record per win, ordered by
/// question id. Throws ValidationError if a pair does not have exactly one
/// English side.
DatasetSummary emit_step2_datasets(std::vector<Verdict> verdicts,
                                   const std::filesystem::path &out_dir,
                                   const Step2EmitOptions &options = {});

} // namespace x1

namespace nlohmann {

template <> struct adl_serializer<x1::TrajectoryPair> {
  static x1::TrajectoryPair from_json(const json &j);
  static void to_json(json &j, const x1::TrajectoryPair &v);
};
template <> struct adl_serializer<x1::Verdict> {
  static x1::Verdict from_json(const json &j);
  static void to_json(json &j, const x1::Verdict &v);
};

} // namespace nlohmann

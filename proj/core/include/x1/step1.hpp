#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "x1/dataset.hpp"
#include "x1/gateway.hpp"
#include "x1/types.hpp"

namespace x1 {

class JsonLinePlugin;

struct SeedTrace {
  Question question;
  Language language; ///< thinking language of the trace
  std::string trace;
  std::string answer;
};

struct TranslatedTrace {
  std::string seed_id;
  Language target;
  std::string text;
  double quality = 0.0;
  bool kept = false;
};

/// Per-item problem that excluded an item from a stage's output.
struct ItemIssue {
  std::string id;
  std::string reason;
};

struct SeedCollection {
  std::vector<SeedTrace> seeds;
  std::vector<ItemIssue> excluded;
};

/// One backbone call per question, no forced prefix. Responses with an empty
/// trace, and items whose call failed, are reported in `excluded`.
SeedCollection collect_seed_traces(const Gateway &gateway, const ModelEndpoint &backbone,
                                   const std::vector<Question> &questions,
                                   std::size_t parallelism = 1, std::uint64_t seed = 0);

/// Identifier recorded in manifests for the translation prompt below.
inline constexpr std::string_view kTranslationPromptVersion = "self-translate-v1";

std::string render_translation_prompt(Language target, std::string_view trace);

struct TranslationBatch {
  std::vector<TranslatedTrace> candidates;
  std::vector<ItemIssue> failed;
};

/// Asks the backbone to translate every seed trace into every target other
/// than the seed's own language. Throws ValidationError for targets outside
/// the reasoning-language set.
TranslationBatch translate_traces(const Gateway &gateway, const ModelEndpoint &backbone,
                                  const std::vector<SeedTrace> &seeds,
                                  const std::vector<Language> &targets,
                                  std::size_t parallelism = 1, std::uint64_t seed = 0);

/// Reference-free translation quality in [0, 1]. Implementations throw
/// ScorerFailure when they cannot produce a score.
class QualityScorer {
public:
  virtual ~QualityScorer() = default;
  virtual double score(std::string_view source, std::string_view translation,
                       Language target) = 0;
};

/// Offline scorer: sqrt(byte-length ratio) × script match, where script
/// match is 1 when the built-in detector agrees with the target, 0.5 when
/// it is indeterminate and 0.25 otherwise.
class HeuristicQualityScorer : public QualityScorer {
public:
  double score(std::string_view source, std::string_view translation,
               Language target) override;
};

/// External QE model over the JSON-lines protocol:
/// `{"text", "source", "language"}` → `{"score"}`.
class PluginQualityScorer : public QualityScorer {
public:
  explicit PluginQualityScorer(std::shared_ptr<JsonLinePlugin> plugin);
  double score(std::string_view source, std::string_view translation,
               Language target) override;

private:
  std::shared_ptr<JsonLinePlugin> plugin_;
};

inline constexpr double kDefaultQualityThreshold = 0.4;

/// Scores every candidate and sets kept = (quality >= threshold). Returns all
/// candidates; discarded ones are also written to `audit` when given.
/// ScorerFailure aborts the whole batch.
std::vector<TranslatedTrace> filter_quality(std::vector<TranslatedTrace> cands,
                                            const std::vector<SeedTrace> &seeds,
                                            QualityScorer &scorer, double threshold,
                                            const std::optional<std::filesystem::path> &audit = {});

/// Writes one SftRecord per kept translation to `out`. Throws JoinFailure
/// when a translation has no seed.
DatasetSummary emit_step1_dataset(const std::vector<TranslatedTrace> &kept,
                                  const std::vector<SeedTrace> &seeds,
                                  const std::filesystem::path &out,
                                  const std::string &run_id = {});

} // namespace x1

namespace nlohmann {

template <> struct adl_serializer<x1::SeedTrace> {
  static x1::SeedTrace from_json(const json &j);
  static void to_json(json &j, const x1::SeedTrace &v);
};
template <> struct adl_serializer<x1::TranslatedTrace> {
  static x1::TranslatedTrace from_json(const json &j);
  static void to_json(json &j, const x1::TranslatedTrace &v);
};

} // namespace nlohmann

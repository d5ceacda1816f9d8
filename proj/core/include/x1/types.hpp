#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "x1/decimal.hpp"
#include "x1/language.hpp"

namespace x1 {

enum class Scenario { math, culture };
enum class Stage { step1, step2 };

std::string to_string(Scenario s);
Scenario scenario_from_string(std::string_view s);

struct GoldAnswer {
  enum class Kind { numeric, choice_label };

  Kind kind = Kind::numeric;
  std::optional<Decimal> numeric_value;
  std::string label;

  static GoldAnswer numeric(Decimal v) { return {Kind::numeric, v, {}}; }
  static GoldAnswer choice(std::string l) {
    return {Kind::choice_label, std::nullopt, std::move(l)};
  }
  friend bool operator==(const GoldAnswer &, const GoldAnswer &) = default;
};

struct Question {
  std::string id; ///< `{source}:{language-code}:{index}`
  std::string text;
  Language prompt_language;
  std::string source;
  std::optional<GoldAnswer> gold;
  std::optional<std::string> culture_knowledge; ///< the cultural norm
  std::optional<std::string> country;

  Scenario scenario() const {
    return culture_knowledge ? Scenario::culture : Scenario::math;
  }
  friend bool operator==(const Question &, const Question &) = default;
};

std::string make_question_id(std::string_view source, Language lang,
                             std::size_t index);

/// One model response split into thinking-language marker, trace and answer.
struct Trajectory {
  std::optional<Language> thinking_language;
  std::string trace;
  std::string answer;
  std::string raw;
  bool truncated_by_guard = false;
  friend bool operator==(const Trajectory &, const Trajectory &) = default;
};

enum class JudgeMethod { math_exact, culture_judge };

struct Judgment {
  double score = 0.0; ///< in [0, 10]
  JudgeMethod method = JudgeMethod::math_exact;
  std::optional<std::string> judge_model;
  std::optional<std::string> rationale;
  friend bool operator==(const Judgment &, const Judgment &) = default;
};

struct RecordMeta {
  std::string question_id;
  std::optional<Language> thinking_language;
  Scenario scenario = Scenario::math;
  Stage stage = Stage::step1;
  std::string run_id;
  friend bool operator==(const RecordMeta &, const RecordMeta &) = default;
};

struct SftRecord {
  std::string input;
  std::string output;
  RecordMeta meta;
  friend bool operator==(const SftRecord &, const SftRecord &) = default;
};

/// Self-awareness rows share the SFT layout; only the template differs.
using AwarenessRecord = SftRecord;

struct DpoRecord {
  std::string prompt;
  std::string chosen;
  std::string rejected;
  RecordMeta meta; ///< thinking_language is the chosen language
  std::optional<Language> rejected_language;
  double chosen_score = 0.0;
  double rejected_score = 0.0;
  friend bool operator==(const DpoRecord &, const DpoRecord &) = default;
};

enum class EndpointRole { backbone, surface, judge, mock };
enum class PrefixMode { assistant_continuation, completion };

struct SamplingParams {
  std::optional<double> temperature;
  std::optional<double> top_p;
  std::int64_t max_new_tokens = 32768;
  friend bool operator==(const SamplingParams &, const SamplingParams &) = default;
};

struct ModelEndpoint {
  std::string base_url;
  std::string model_name;
  std::string api_key_env;
  EndpointRole role = EndpointRole::backbone;
  Language default_think_language = english();
  SamplingParams sampling;
  PrefixMode prefix_mode = PrefixMode::assistant_continuation;
  std::filesystem::path fixture; ///< required when role == mock
};

/// Validates endpoint invariants (mock needs a fixture). Throws ValidationError.
void validate(const ModelEndpoint &endpoint);

enum class QuestionKind { math, culture, choice, seed };

struct DatasetSource {
  std::string name; ///< mgsm8kinstruct | culturebank | custom (or a benchmark tag)
  std::filesystem::path path;
  QuestionKind kind = QuestionKind::math;
  std::map<Language, std::size_t> per_language_quota;
};

/// Built-in source with its quota table; throws ValidationError for
/// names other than mgsm8kinstruct / culturebank.
DatasetSource builtin_source(std::string_view name, std::filesystem::path path);

} // namespace x1

namespace nlohmann {

template <> struct adl_serializer<x1::Language> {
  static x1::Language from_json(const json &j) {
    return x1::canonical_language(j.get<std::string>());
  }
  static void to_json(json &j, x1::Language l) { j = l.name(); }
};

template <> struct adl_serializer<x1::Decimal> {
  static x1::Decimal from_json(const json &j);
  static void to_json(json &j, const x1::Decimal &d);
};

#define X1_DECLARE_SERIALIZER(T)                                               \
  template <> struct adl_serializer<T> {                                       \
    static T from_json(const json &j);                                         \
    static void to_json(json &j, const T &v);                                  \
  };

X1_DECLARE_SERIALIZER(x1::GoldAnswer)
X1_DECLARE_SERIALIZER(x1::Question)
X1_DECLARE_SERIALIZER(x1::Trajectory)
X1_DECLARE_SERIALIZER(x1::Judgment)
X1_DECLARE_SERIALIZER(x1::RecordMeta)
X1_DECLARE_SERIALIZER(x1::SftRecord)
X1_DECLARE_SERIALIZER(x1::DpoRecord)
X1_DECLARE_SERIALIZER(x1::SamplingParams)
X1_DECLARE_SERIALIZER(x1::ModelEndpoint)

#undef X1_DECLARE_SERIALIZER

} // namespace nlohmann

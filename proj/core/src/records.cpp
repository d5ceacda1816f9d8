#include <string_view>

#include "x1/error.hpp"
#include "x1/types.hpp"

namespace x1 {

std::string to_string(Scenario s) {
  return s == Scenario::math ? "math" : "culture";
}

Scenario scenario_from_string(std::string_view s) {
  if (s == "math")
    return Scenario::math;
  if (s == "culture")
    return Scenario::culture;
  throw ValidationError("unknown scenario '" + std::string(s) + "'");
}

std::string make_question_id(std::string_view source, Language lang,
                             std::size_t index) {
  return std::string(source) + ":" + lang.code() + ":" + std::to_string(index);
}

void validate(const ModelEndpoint &endpoint) {
  if (endpoint.role == EndpointRole::mock && endpoint.fixture.empty())
    throw ValidationError("mock endpoint '" + endpoint.model_name +
                          "' requires a fixture path");
  if (endpoint.role != EndpointRole::mock && endpoint.base_url.empty())
    throw ValidationError("endpoint '" + endpoint.model_name +
                          "' has no base_url");
  if (endpoint.sampling.max_new_tokens <= 0)
    throw ValidationError("max_new_tokens must be positive");
}

DatasetSource builtin_source(std::string_view name, std::filesystem::path path) {
  DatasetSource src;
  src.name = std::string(name);
  src.path = std::move(path);
  if (name == "mgsm8kinstruct") {
    src.kind = QuestionKind::math;
    src.per_language_quota = math_quota();
  } else if (name == "culturebank") {
    src.kind = QuestionKind::culture;
    src.per_language_quota = culture_quota();
  } else {
    throw ValidationError("not a built-in dataset: '" + std::string(name) + "'");
  }
  return src;
}

namespace {

using nlohmann::json;

std::string_view stage_name(Stage s) { return s == Stage::step1 ? "step1" : "step2"; }

json opt_lang(const std::optional<Language> &l) {
  return l ? json(l->name()) : json(nullptr);
}

std::optional<Language> opt_lang(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  return canonical_language(it->get<std::string>());
}

std::optional<std::string> opt_str(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  return it->get<std::string>();
}

json opt_str(const std::optional<std::string> &s) {
  return s ? json(*s) : json(nullptr);
}

std::string_view role_name(EndpointRole r) {
  switch (r) {
  case EndpointRole::backbone:
    return "backbone";
  case EndpointRole::surface:
    return "surface";
  case EndpointRole::judge:
    return "judge";
  case EndpointRole::mock:
    return "mock";
  }
  return "backbone";
}

EndpointRole role_from(std::string_view s) {
  if (s == "backbone")
    return EndpointRole::backbone;
  if (s == "surface")
    return EndpointRole::surface;
  if (s == "judge")
    return EndpointRole::judge;
  if (s == "mock")
    return EndpointRole::mock;
  throw ValidationError("unknown endpoint role '" + std::string(s) + "'");
}

} // namespace
} // namespace x1

namespace nlohmann {

using x1::Language;

x1::Decimal adl_serializer<x1::Decimal>::from_json(const json &j) {
  if (j.is_string())
    return x1::Decimal::from_string(j.get<std::string>());
  if (j.is_number())
    return x1::Decimal::from_string(j.dump());
  throw x1::ValidationError("expected a number, got " + j.dump());
}

void adl_serializer<x1::Decimal>::to_json(json &j, const x1::Decimal &d) {
  j = d.to_string();
}

x1::GoldAnswer adl_serializer<x1::GoldAnswer>::from_json(const json &j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "numeric")
    return x1::GoldAnswer::numeric(j.at("value").get<x1::Decimal>());
  if (kind == "choice")
    return x1::GoldAnswer::choice(j.at("label").get<std::string>());
  throw x1::ValidationError("unknown gold kind '" + kind + "'");
}

void adl_serializer<x1::GoldAnswer>::to_json(json &j, const x1::GoldAnswer &g) {
  if (g.kind == x1::GoldAnswer::Kind::numeric)
    j = json{{"kind", "numeric"}, {"value", *g.numeric_value}};
  else
    j = json{{"kind", "choice"}, {"label", g.label}};
}

x1::Question adl_serializer<x1::Question>::from_json(const json &j) {
  x1::Question q{j.at("id").get<std::string>(), j.at("text").get<std::string>(),
                 j.at("prompt_language").get<Language>(),
                 j.value("source", std::string{}), std::nullopt,
                 x1::opt_str(j, "culture_knowledge"), x1::opt_str(j, "country")};
  if (auto it = j.find("gold"); it != j.end() && !it->is_null())
    q.gold = it->get<x1::GoldAnswer>();
  return q;
}

void adl_serializer<x1::Question>::to_json(json &j, const x1::Question &q) {
  j = json{{"id", q.id},
           {"text", q.text},
           {"prompt_language", q.prompt_language},
           {"source", q.source},
           {"gold", q.gold ? json(*q.gold) : json(nullptr)},
           {"culture_knowledge", x1::opt_str(q.culture_knowledge)},
           {"country", x1::opt_str(q.country)}};
}

x1::Trajectory adl_serializer<x1::Trajectory>::from_json(const json &j) {
  return {x1::opt_lang(j, "thinking_language"), j.at("trace").get<std::string>(),
          j.at("answer").get<std::string>(), j.at("raw").get<std::string>(),
          j.value("truncated_by_guard", false)};
}

void adl_serializer<x1::Trajectory>::to_json(json &j, const x1::Trajectory &t) {
  j = json{{"thinking_language", x1::opt_lang(t.thinking_language)},
           {"trace", t.trace},
           {"answer", t.answer},
           {"raw", t.raw},
           {"truncated_by_guard", t.truncated_by_guard}};
}

x1::Judgment adl_serializer<x1::Judgment>::from_json(const json &j) {
  const auto method = j.at("method").get<std::string>();
  x1::Judgment out;
  out.score = j.at("score").get<double>();
  if (method == "math-exact")
    out.method = x1::JudgeMethod::math_exact;
  else if (method == "culture-judge")
    out.method = x1::JudgeMethod::culture_judge;
  else
    throw x1::ValidationError("unknown judgment method '" + method + "'");
  out.judge_model = x1::opt_str(j, "judge_model");
  out.rationale = x1::opt_str(j, "rationale");
  return out;
}

void adl_serializer<x1::Judgment>::to_json(json &j, const x1::Judgment &v) {
  j = json{{"score", v.score},
           {"method", v.method == x1::JudgeMethod::math_exact ? "math-exact"
                                                              : "culture-judge"},
           {"judge_model", x1::opt_str(v.judge_model)},
           {"rationale", x1::opt_str(v.rationale)}};
}

x1::RecordMeta adl_serializer<x1::RecordMeta>::from_json(const json &j) {
  x1::RecordMeta m;
  m.question_id = j.at("question_id").get<std::string>();
  m.thinking_language = x1::opt_lang(j, "thinking_language");
  m.scenario = x1::scenario_from_string(j.at("scenario").get<std::string>());
  const auto stage = j.at("stage").get<std::string>();
  if (stage != "step1" && stage != "step2")
    throw x1::ValidationError("unknown stage '" + stage + "'");
  m.stage = stage == "step1" ? x1::Stage::step1 : x1::Stage::step2;
  m.run_id = j.value("run_id", std::string{});
  return m;
}

void adl_serializer<x1::RecordMeta>::to_json(json &j, const x1::RecordMeta &m) {
  j = json{{"question_id", m.question_id},
           {"thinking_language", x1::opt_lang(m.thinking_language)},
           {"scenario", x1::to_string(m.scenario)},
           {"stage", x1::stage_name(m.stage)},
           {"run_id", m.run_id}};
}

x1::SftRecord adl_serializer<x1::SftRecord>::from_json(const json &j) {
  return {j.at("input").get<std::string>(), j.at("output").get<std::string>(),
          j.at("meta").get<x1::RecordMeta>()};
}

void adl_serializer<x1::SftRecord>::to_json(json &j, const x1::SftRecord &r) {
  j = json{{"input", r.input}, {"output", r.output}, {"meta", r.meta}};
}

x1::DpoRecord adl_serializer<x1::DpoRecord>::from_json(const json &j) {
  x1::DpoRecord r;
  r.prompt = j.at("prompt").get<std::string>();
  r.chosen = j.at("chosen").get<std::string>();
  r.rejected = j.at("rejected").get<std::string>();
  const auto &meta = j.at("meta");
  r.meta = meta.get<x1::RecordMeta>();
  r.rejected_language = x1::opt_lang(meta, "rejected_language");
  r.chosen_score = meta.at("chosen_score").get<double>();
  r.rejected_score = meta.at("rejected_score").get<double>();
  return r;
}

void adl_serializer<x1::DpoRecord>::to_json(json &j, const x1::DpoRecord &r) {
  json meta = r.meta;
  meta["rejected_language"] = x1::opt_lang(r.rejected_language);
  meta["chosen_score"] = r.chosen_score;
  meta["rejected_score"] = r.rejected_score;
  j = json{{"prompt", r.prompt},
           {"chosen", r.chosen},
           {"rejected", r.rejected},
           {"meta", std::move(meta)}};
}

x1::SamplingParams adl_serializer<x1::SamplingParams>::from_json(const json &j) {
  x1::SamplingParams s;
  if (auto it = j.find("temperature"); it != j.end() && !it->is_null())
    s.temperature = it->get<double>();
  if (auto it = j.find("top_p"); it != j.end() && !it->is_null())
    s.top_p = it->get<double>();
  s.max_new_tokens = j.value("max_new_tokens", std::int64_t{32768});
  return s;
}

void adl_serializer<x1::SamplingParams>::to_json(json &j,
                                                 const x1::SamplingParams &s) {
  j = json{{"temperature", s.temperature ? json(*s.temperature) : json(nullptr)},
           {"top_p", s.top_p ? json(*s.top_p) : json(nullptr)},
           {"max_new_tokens", s.max_new_tokens}};
}

x1::ModelEndpoint adl_serializer<x1::ModelEndpoint>::from_json(const json &j) {
  x1::ModelEndpoint e;
  e.base_url = j.value("base_url", std::string{});
  e.model_name = j.at("model_name").get<std::string>();
  e.api_key_env = j.value("api_key_env", std::string{});
  e.role = x1::role_from(j.value("role", std::string{"backbone"}));
  if (auto it = j.find("default_think_language"); it != j.end())
    e.default_think_language = it->get<Language>();
  if (auto it = j.find("sampling"); it != j.end())
    e.sampling = it->get<x1::SamplingParams>();
  const auto mode = j.value("prefix_mode", std::string{"assistant-continuation"});
  if (mode == "assistant-continuation")
    e.prefix_mode = x1::PrefixMode::assistant_continuation;
  else if (mode == "completion")
    e.prefix_mode = x1::PrefixMode::completion;
  else
    throw x1::ValidationError("unknown prefix_mode '" + mode + "'");
  e.fixture = j.value("fixture", std::string{});
  return e;
}

void adl_serializer<x1::ModelEndpoint>::to_json(json &j,
                                                const x1::ModelEndpoint &e) {
  j = json{{"base_url", e.base_url},
           {"model_name", e.model_name},
           {"api_key_env", e.api_key_env},
           {"role", x1::role_name(e.role)},
           {"default_think_language", e.default_think_language},
           {"sampling", e.sampling},
           {"prefix_mode", e.prefix_mode == x1::PrefixMode::completion
                               ? "completion"
                               : "assistant-continuation"},
           {"fixture", e.fixture.string()}};
}

} // namespace nlohmann

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "x1/gateway.hpp"
#include "x1/types.hpp"

namespace x1 {

std::string render_recall_identification_prompt(std::string_view question,
                                                std::string_view answer,
                                                std::string_view reasoning);

std::string render_recall_verification_prompt(std::string_view question,
                                              std::string_view answer,
                                              std::string_view norm);

/// Parses the first Python-style list of strings in `reply` (single or
/// double quotes, backslash escapes). "[]" and a bare "None" give an empty
/// list; nullopt when no list can be read.
std::optional<std::vector<std::string>> parse_python_string_list(std::string_view reply);

/// First standalone "True" / "False" (case-insensitive) in `reply`.
std::optional<bool> parse_true_false(std::string_view reply);

struct RecallResult {
  std::string question_id;
  std::vector<std::string> recalls;
  std::vector<bool> verified;
};

/// One identification call, then one verification call per extracted norm.
/// Each call gets one reprompt before JudgeUnparseable.
RecallResult recall_analysis(const Gateway &gateway, const ModelEndpoint &judge,
                             const Question &q, std::string_view gold_answer,
                             std::string_view reasoning, std::uint64_t seed = 0);

struct RecallStats {
  double avg_recall_count_per_thought = 0.0;
  double recall_accuracy_pct = 0.0;
  std::size_t thoughts = 0;
  std::size_t recalls = 0;
  std::size_t verified = 0;
};

RecallStats recall_stats(const std::vector<RecallResult> &results);

nlohmann::json to_json(const RecallStats &s);
nlohmann::json to_json(const RecallResult &r);

} // namespace x1

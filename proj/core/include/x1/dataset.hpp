#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "x1/types.hpp"

namespace x1 {

/// Counts reported by the dataset emitters.
struct DatasetSummary {
  std::string run_id;
  std::size_t records = 0;
  std::map<std::string, std::size_t> per_language; ///< by language name
  std::size_t ties = 0;
  std::map<std::string, std::size_t> ties_per_language;
  std::size_t awareness_records = 0;
  std::size_t dpo_records = 0;
  std::vector<std::filesystem::path> files;
};

nlohmann::json to_json(const DatasetSummary &s);

struct LoadedDataset {
  std::vector<Question> questions;
  std::vector<std::string> warnings; ///< QuotaMismatch notes for built-ins
};

/// Reads a JSONL question file. Recognized fields:
///   question | inputs          prompt text (required)
///   answer   | targets         gold: number (math) or option label (choice)
///   knowledge                  cultural norm (required for culture)
///   language                   prompt language tag (default English)
///   country                    region; sets the culture group
///   id                         optional stable id
/// Throws SchemaError naming the line for malformed or incomplete rows.
LoadedDataset load_dataset(const DatasetSource &source);

/// Language group a question is counted under for quotas: the culture group
/// of its country when present, its prompt language otherwise.
Language quota_group(const Question &q);

/// Deterministic per-group sample: questions of each group are shuffled
/// (Fisher–Yates over mt19937_64 seeded once with `seed`, groups visited in
/// language-list order) and the first `quota[group]` kept. Groups absent from
/// `quota` are dropped. Short groups yield all their items and a warning.
LoadedDataset sample_quota(const std::vector<Question> &questions,
                           const std::map<Language, std::size_t> &quota,
                           std::uint64_t seed);

} // namespace x1

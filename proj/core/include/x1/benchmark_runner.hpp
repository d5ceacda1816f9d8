#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "x1/gateway.hpp"
#include "x1/langid.hpp"
#include "x1/metrics.hpp"
#include "x1/types.hpp"

namespace x1 {

struct BenchmarkOptions {
  int runs = 3;
  std::uint64_t base_seed = 0; ///< run k uses base_seed + k
  std::size_t parallelism = 1;
  /// Forces this thinking language through the marker prefix.
  std::optional<Language> force_think;
  const LanguageDetector *detector = nullptr; ///< built-in when null
};

/// Queries every question `runs` times. Correctness is exact numeric match
/// for numeric gold and option-label match for choice gold; call failures
/// are recorded as incorrect with an error tag. Throws ValidationError for
/// questions without gold.
std::vector<SampleResult> run_benchmark(const Gateway &gateway, const ModelEndpoint &endpoint,
                                        const std::vector<Question> &questions,
                                        const BenchmarkOptions &options = {});

/// Builds the per-sample record for one response.
SampleResult evaluate_response(const Question &q, const ModelEndpoint &endpoint, int run_index,
                               const ChatOutcome &outcome, const BenchmarkOptions &options);

/// Writes `{dir}/samples.jsonl`, `{dir}/metrics.json` and `{dir}/tables/*.csv`
/// (accuracy, compliance, frequency). Returns the metrics document.
nlohmann::json write_results(const std::filesystem::path &dir, const std::string &run_id,
                             const std::vector<SampleResult> &results);

std::vector<SampleResult> read_results(const std::filesystem::path &samples_jsonl);

} // namespace x1

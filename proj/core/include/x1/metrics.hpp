#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "x1/decimal.hpp"
#include "x1/langid.hpp"
#include "x1/types.hpp"

namespace x1 {

struct SampleResult {
  std::string question_id;
  Language language; ///< benchmark subset (prompt language)
  int run_index = 0;
  bool correct = false;
  double raw_score = 0.0;
  std::optional<Language> chosen_think_language;
  bool switched = false;
  ComplianceFlags compliance;
  double mixing_rate = 0.0;
  bool truncated = false;
  std::optional<std::string> error;
};

struct AccuracyTable {
  std::map<Language, double> per_language; ///< percent
  double overall = 0.0;                    ///< unweighted mean over languages
  int runs = 0;
};

/// Per-language accuracy averaged over runs. Throws IncompleteRuns when any
/// (question, run) cell is missing or duplicated.
AccuracyTable mean_at_k(const std::vector<SampleResult> &results);

/// Population standard deviation (divide by N). Throws ValidationError for
/// fewer than two languages.
double cross_language_std(const std::map<Language, double> &per_language);

struct WtlRates {
  double win = 0.0;
  double tie_correct = 0.0;
  double tie_incorrect = 0.0;
  double lose = 0.0;
  std::size_t n = 0;
};

/// Outcome of `alt` against `base`, aligned by (question, run).
/// Throws AlignmentMismatch.
WtlRates win_tie_lose(const std::vector<SampleResult> &base,
                      const std::vector<SampleResult> &alt);

struct BenefitReport {
  double benefit_rate = 0.0;
  double harm_rate = 0.0;
  double net_benefit = 0.0;
  std::size_t benefit_count = 0;
  std::size_t harm_count = 0;
  std::size_t switched_count = 0;
  std::size_t n = 0;
};

/// Rescues and regressions among switched samples over all N samples.
/// Throws AlignmentMismatch.
BenefitReport benefit_harm(const std::vector<SampleResult> &backbone,
                           const std::vector<SampleResult> &adaptive);

struct FrequencyReport {
  /// subset → chosen thinking language → percent (over samples with a choice)
  std::map<Language, std::map<Language, double>> per_subset;
  /// Spearman rank correlation between native-thinking frequency and the
  /// backbone's per-subset accuracy, when both are available.
  std::optional<double> native_vs_accuracy_spearman;
};

FrequencyReport think_language_frequency(
    const std::vector<SampleResult> &results,
    const std::optional<std::map<Language, double>> &backbone_accuracy = std::nullopt);

/// Spearman's rho with average ranks for ties; nullopt when undefined.
std::optional<double> spearman(const std::vector<double> &x, const std::vector<double> &y);

struct VoteResult {
  Decimal winner;
  bool correct = false;
  std::map<std::string, std::size_t> tally; ///< value → votes
  std::vector<Language> invalid;            ///< languages without a number
};

/// Plurality over numeric answers. Ties go to the value whose first voter
/// comes earliest in the language-list order. Throws AllVotesInvalid.
VoteResult majority_vote(const std::map<Language, std::string> &answers,
                         const std::optional<GoldAnswer> &gold = std::nullopt);

struct MixingBucket {
  std::size_t count = 0;
  std::size_t benefit = 0;
  std::size_t harm = 0;
  double net_benefit = 0.0; ///< percent of all aligned samples
};

struct MixingReport {
  MixingBucket increased;
  MixingBucket decreased;
  MixingBucket unchanged;
  std::size_t non_switched = 0;
  std::size_t n = 0;
};

/// Splits non-switched samples by the change in mixing rate (adaptive vs
/// backbone). Throws AlignmentMismatch.
MixingReport mixing_benefit_report(const std::vector<SampleResult> &backbone,
                                   const std::vector<SampleResult> &adaptive);

struct ComplianceRates {
  double thinking = 0.0;
  double answer = 0.0;
  double both = 0.0;
  std::size_t n = 0;
};

/// Overall and per-subset compliance percentages.
std::map<std::string, ComplianceRates> compliance_table(const std::vector<SampleResult> &results);

// --- serialization -------------------------------------------------------------

nlohmann::json to_json(const AccuracyTable &t);
nlohmann::json to_json(const WtlRates &r);
nlohmann::json to_json(const BenefitReport &r);
nlohmann::json to_json(const FrequencyReport &r);
nlohmann::json to_json(const MixingReport &r);
nlohmann::json to_json(const VoteResult &r);
nlohmann::json to_json(const std::map<std::string, ComplianceRates> &t);

/// Rows of a CSV table; the first row is the header.
using CsvTable = std::vector<std::vector<std::string>>;

CsvTable to_csv(const AccuracyTable &t);
CsvTable to_csv(const WtlRates &r);
CsvTable to_csv(const BenefitReport &r);
CsvTable to_csv(const FrequencyReport &r);
CsvTable to_csv(const MixingReport &r);
CsvTable to_csv(const std::map<std::string, ComplianceRates> &t);

std::string render_csv(const CsvTable &table);
void write_csv(const std::filesystem::path &path, const CsvTable &table);

/// Fixed-precision number formatting used in reports.
std::string format_number(double v, int precision = 4);

} // namespace x1

namespace nlohmann {

template <> struct adl_serializer<x1::SampleResult> {
  static x1::SampleResult from_json(const json &j);
  static void to_json(json &j, const x1::SampleResult &v);
};

} // namespace nlohmann

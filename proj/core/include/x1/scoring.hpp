#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "x1/decimal.hpp"
#include "x1/gateway.hpp"
#include "x1/types.hpp"

namespace x1 {

/// Last standalone number in the answer segment of `text`. Grouping
/// separators (",", " ", "،", "٬") between digit groups are dropped,
/// Arabic-Indic / Persian / Devanagari / Bengali / Thai / full-width digits
/// are folded to ASCII, "%" is ignored. Throws NoNumberFound.
Decimal extract_numeric_answer(std::string_view text);

/// 10 when the extracted number equals the gold value exactly, else 0.
/// A missing number scores 0 with rationale "no extractable number".
/// Throws ValidationError if `gold` is not numeric.
Judgment score_math(std::string_view pred_answer_text, const GoldAnswer &gold);

/// Option label A–D picked from a multiple-choice answer: an explicit
/// "answer is X" / "Answer: X" / "(X)" / "X)" form first, then the first
/// standalone capital A–D, then a lone lowercase letter.
std::optional<char> extract_choice_label(std::string_view text);

/// Case-insensitive label match.
bool choice_correct(std::string_view answer_text, const GoldAnswer &gold);

/// Entailment-scoring prompt with the three fields filled in.
std::string render_culture_judge_prompt(std::string_view question,
                                        std::string_view knowledge,
                                        std::string_view response);

/// Lenient numeric read of a judge reply, clamped to [0, 10].
std::optional<double> parse_judge_score(std::string_view reply);

/// Judge call (temperature 0) scoring how well `response` entails the
/// question's cultural knowledge. One reprompt on an unparseable reply, then
/// JudgeUnparseable. Throws ValidationError when the question has no
/// cultural knowledge.
Judgment score_culture(const Gateway &gateway, const ModelEndpoint &judge,
                       const Question &q, std::string_view response,
                       std::uint64_t seed = 0);

/// ChatRequest used for a judge prompt (deterministic sampling).
ChatRequest judge_request(const ModelEndpoint &judge, std::string prompt,
                          std::uint64_t seed);

} // namespace x1

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace x1 {

inline constexpr std::size_t kDefaultGuardBlock = 256;

enum class GuardDecision { proceed, stop };

/// Incremental repetition-detection truncation over decoded text.
///
/// The first `prompt_len` characters fed are treated as prompt and never
/// inspected. After every feed, with T the post-prompt text: if |T| >= 2B and
/// the last B characters of T occur inside T[0, |T|-B), the guard stops.
/// Units are Unicode scalar values.
class RepeatGuard {
public:
  explicit RepeatGuard(std::size_t block_size = kDefaultGuardBlock,
                       std::size_t prompt_len = 0);

  /// UTF-8 delta. Incomplete trailing sequences are held until completed.
  /// Throws FedAfterStop once stopped.
  GuardDecision feed(std::string_view delta);
  GuardDecision feed(std::u32string_view delta);

  bool stopped() const noexcept { return stopped_; }
  std::size_t block_size() const noexcept { return block_; }
  std::size_t prompt_len() const noexcept { return prompt_len_; }
  /// Post-prompt characters seen so far.
  const std::u32string &seen() const noexcept { return seen_; }

private:
  void push(char32_t c);
  GuardDecision check();
  std::uint64_t window_hash(std::size_t start) const;

  std::size_t block_;
  std::size_t prompt_len_;
  std::size_t prompt_seen_ = 0;
  std::u32string seen_;
  std::string pending_bytes_;
  bool stopped_ = false;

  void index_window(std::size_t start);
  std::size_t find_slot(std::uint64_t hash) const;
  void grow();

  // Rolling-hash index over windows fully inside the comparison prefix:
  // open addressing on the hash, windows with equal hashes chained.
  std::vector<std::uint64_t> prefix_hash_{0};
  std::uint64_t base_pow_block_ = 1;
  std::size_t next_indexed_start_ = 0;
  std::vector<std::uint64_t> slot_hash_;
  std::vector<std::size_t> slot_head_; ///< latest start + 1; 0 = empty
  std::vector<std::size_t> chain_;     ///< previous start + 1 with the same hash
  std::size_t slots_used_ = 0;
};

struct TruncateResult {
  std::string kept;
  bool was_truncated = false;
};

/// Character-by-character simulation of RepeatGuard over `full`; `kept` runs
/// up to and including the stopping character. Requires block_size >= 1 and
/// prompt_len <= character length of `full` (ValidationError otherwise).
TruncateResult truncate_text(std::string_view full, std::size_t prompt_len,
                             std::size_t block_size);

} // namespace x1

#include "x1/repeat_guard.hpp"

#include <algorithm>

#include "x1/error.hpp"
#include "x1/utf8.hpp"

namespace x1 {

namespace {

constexpr std::uint64_t kBase = 0x100000001b3ULL;

// Length of the longest prefix of `s` made of complete UTF-8 sequences.
std::size_t complete_prefix(std::string_view s) {
  std::size_t n = s.size();
  std::size_t back = 0;
  while (back < 4 && back < n &&
         (static_cast<unsigned char>(s[n - 1 - back]) & 0xC0) == 0x80)
    ++back;
  if (back == n)
    return n;
  const auto lead = static_cast<unsigned char>(s[n - 1 - back]);
  std::size_t need = 1;
  if ((lead & 0xE0) == 0xC0)
    need = 2;
  else if ((lead & 0xF0) == 0xE0)
    need = 3;
  else if ((lead & 0xF8) == 0xF0)
    need = 4;
  return back + 1 < need ? n - 1 - back : n;
}

} // namespace

RepeatGuard::RepeatGuard(std::size_t block_size, std::size_t prompt_len)
    : block_(block_size), prompt_len_(prompt_len) {
  if (block_size == 0)
    throw ValidationError("repeat guard block size must be >= 1");
  for (std::size_t i = 0; i < block_; ++i)
    base_pow_block_ *= kBase;
}

GuardDecision RepeatGuard::feed(std::string_view delta) {
  if (stopped_)
    throw FedAfterStop();
  pending_bytes_.append(delta);
  const auto cut = complete_prefix(pending_bytes_);
  const auto chars = utf8::decode(std::string_view(pending_bytes_).substr(0, cut));
  pending_bytes_.erase(0, cut);
  return feed(std::u32string_view(chars));
}

GuardDecision RepeatGuard::feed(std::u32string_view delta) {
  if (stopped_)
    throw FedAfterStop();
  for (char32_t c : delta) {
    if (prompt_seen_ < prompt_len_) {
      ++prompt_seen_;
      continue;
    }
    push(c);
  }
  return check();
}

void RepeatGuard::push(char32_t c) {
  seen_.push_back(c);
  prefix_hash_.push_back(prefix_hash_.back() * kBase + static_cast<std::uint64_t>(c) + 1);
}

std::uint64_t RepeatGuard::window_hash(std::size_t start) const {
  return prefix_hash_[start + block_] - prefix_hash_[start] * base_pow_block_;
}

std::size_t RepeatGuard::find_slot(std::uint64_t hash) const {
  const std::size_t mask = slot_hash_.size() - 1;
  std::size_t i = static_cast<std::size_t>(hash ^ (hash >> 29)) & mask;
  while (slot_head_[i] != 0 && slot_hash_[i] != hash)
    i = (i + 1) & mask;
  return i;
}

void RepeatGuard::grow() {
  std::vector<std::uint64_t> old_hash(std::max<std::size_t>(64, slot_hash_.size() * 2));
  std::vector<std::size_t> old_head(old_hash.size());
  old_hash.swap(slot_hash_);
  old_head.swap(slot_head_);
  for (std::size_t i = 0; i < old_head.size(); ++i) {
    if (old_head[i] == 0)
      continue;
    const auto slot = find_slot(old_hash[i]);
    slot_hash_[slot] = old_hash[i];
    slot_head_[slot] = old_head[i];
  }
}

void RepeatGuard::index_window(std::size_t start) {
  if (2 * (slots_used_ + 1) > slot_hash_.size())
    grow();
  const auto h = window_hash(start);
  const auto slot = find_slot(h);
  if (slot_head_[slot] == 0) {
    slot_hash_[slot] = h;
    ++slots_used_;
  }
  chain_.push_back(slot_head_[slot]);
  slot_head_[slot] = start + 1;
}

GuardDecision RepeatGuard::check() {
  const std::size_t n = seen_.size();
  if (n < 2 * block_)
    return GuardDecision::proceed;
  // Windows [s, s+B) lying inside T[0, n-B) are those with s <= n - 2B.
  for (; next_indexed_start_ <= n - 2 * block_; ++next_indexed_start_)
    index_window(next_indexed_start_);

  const std::size_t last = n - block_;
  const auto slot = find_slot(window_hash(last));
  const std::u32string_view text(seen_);
  const auto block = text.substr(last, block_);
  for (std::size_t s = slot_head_[slot]; s != 0; s = chain_[s - 1]) {
    if (text.substr(s - 1, block_) == block) {
      stopped_ = true;
      return GuardDecision::stop;
    }
  }
  return GuardDecision::proceed;
}

TruncateResult truncate_text(std::string_view full, std::size_t prompt_len,
                             std::size_t block_size) {
  if (block_size == 0)
    throw ValidationError("block_size must be >= 1");
  const auto chars = utf8::decode(full);
  if (prompt_len > chars.size())
    throw ValidationError("prompt_len exceeds text length");
  RepeatGuard guard(block_size, 0);
  for (std::size_t i = prompt_len; i < chars.size(); ++i) {
    if (guard.feed(std::u32string_view(&chars[i], 1)) == GuardDecision::stop)
      return {utf8::encode(std::u32string_view(chars).substr(0, i + 1)), true};
  }
  return {std::string(full), false};
}

} // namespace x1

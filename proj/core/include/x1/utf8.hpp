#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace x1::utf8 {

/// Decode to Unicode scalar values. Invalid bytes decode as U+FFFD, one per
/// offending byte, so decoding is total.
std::u32string decode(std::string_view text);
/// Decoded text plus the byte offset where each scalar value starts;
/// offsets has one extra entry equal to text.size().
struct IndexedText {
  std::u32string chars;
  std::vector<std::size_t> offsets;
};
IndexedText decode_indexed(std::string_view text);

std::string encode(std::u32string_view text);
void append(std::string &out, char32_t cp);

/// Number of scalar values (same rules as decode).
std::size_t length(std::string_view text);

/// Replace CRLF and lone CR with LF.
std::string normalize_newlines(std::string_view text);

} // namespace x1::utf8

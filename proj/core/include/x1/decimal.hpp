#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace x1 {

/// Exact base-10 number: sign × digits × 10^exponent, kept normalized
/// (no leading or trailing zeros in `digits`, zero has empty digits).
/// Equality is exact, so "18" == "18.0" and "3600" == "3.6e3".
class Decimal {
public:
  Decimal() = default;

  /// Parses [+-]digits[.digits][e[+-]digits]. Returns nullopt otherwise.
  static std::optional<Decimal> parse(std::string_view text);
  /// Throws ValidationError on bad input.
  static Decimal from_string(std::string_view text);
  static Decimal from_int(std::int64_t v);

  bool is_zero() const noexcept { return digits_.empty(); }
  bool negative() const noexcept { return negative_; }

  /// Plain notation, no exponent: "-12.5", "3600", "0.001".
  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const Decimal &, const Decimal &) = default;
  friend std::strong_ordering operator<=>(const Decimal &a, const Decimal &b);

private:
  bool negative_ = false;
  std::string digits_;
  std::int64_t exponent_ = 0;
};

} // namespace x1

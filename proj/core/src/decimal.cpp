#include "x1/decimal.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "x1/error.hpp"

namespace x1 {

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  std::int64_t exponent = 0;
  bool any = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any = true;
      if (dot)
        --exponent;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any)
    return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::int64_t e = 0;
    const char *first = text.data() + i;
    if (i < text.size() && text[i] == '+')
      ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), e);
    if (ec != std::errc() || ptr != text.data() + text.size())
      return std::nullopt;
    exponent += e;
    i = text.size();
  }
  if (i != text.size())
    return std::nullopt;

  auto lead = digits.find_first_not_of('0');
  if (lead == std::string::npos)
    return Decimal{};
  digits.erase(0, lead);
  auto last = digits.find_last_not_of('0');
  exponent += static_cast<std::int64_t>(digits.size() - 1 - last);
  digits.erase(last + 1);

  Decimal d;
  d.negative_ = neg;
  d.digits_ = std::move(digits);
  d.exponent_ = exponent;
  return d;
}

Decimal Decimal::from_string(std::string_view text) {
  if (auto d = parse(text))
    return *d;
  throw ValidationError("not a decimal number: '" + std::string(text) + "'");
}

Decimal Decimal::from_int(std::int64_t v) {
  return *parse(std::to_string(v));
}

std::string Decimal::to_string() const {
  if (is_zero())
    return "0";
  std::string out = negative_ ? "-" : "";
  const auto n = static_cast<std::int64_t>(digits_.size());
  if (exponent_ >= 0) {
    out += digits_;
    out.append(static_cast<std::size_t>(exponent_), '0');
  } else if (-exponent_ < n) {
    out += digits_.substr(0, static_cast<std::size_t>(n + exponent_));
    out += '.';
    out += digits_.substr(static_cast<std::size_t>(n + exponent_));
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-exponent_ - n), '0');
    out += digits_;
  }
  return out;
}

double Decimal::to_double() const { return std::strtod(to_string().c_str(), nullptr); }

std::strong_ordering operator<=>(const Decimal &a, const Decimal &b) {
  if (a.is_zero() || b.is_zero() || a.negative_ != b.negative_) {
    auto sign = [](const Decimal &d) { return d.is_zero() ? 0 : (d.negative_ ? -1 : 1); };
    return sign(a) <=> sign(b);
  }
  // Same sign, both non-zero: compare magnitudes via the position of the
  // most significant digit, then digit-by-digit.
  auto mag = [&]() {
    const auto ta = static_cast<std::int64_t>(a.digits_.size()) + a.exponent_;
    const auto tb = static_cast<std::int64_t>(b.digits_.size()) + b.exponent_;
    if (ta != tb)
      return ta <=> tb;
    const auto n = std::max(a.digits_.size(), b.digits_.size());
    for (std::size_t i = 0; i < n; ++i) {
      char ca = i < a.digits_.size() ? a.digits_[i] : '0';
      char cb = i < b.digits_.size() ? b.digits_[i] : '0';
      if (ca != cb)
        return ca <=> cb;
    }
    return std::strong_ordering::equal;
  }();
  return a.negative_ ? 0 <=> mag : mag;
}

} // namespace x1

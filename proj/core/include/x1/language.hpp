#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace x1 {

/// One entry of the closed language set. Only obtainable through the lookup
/// functions below, so every instance is canonical.
class Language {
public:
  const std::string &name() const noexcept;
  const std::string &code() const noexcept;
  /// Position in the fixed language-list order (used for deterministic
  /// tie-breaking).
  std::size_t order() const noexcept { return index_; }

  friend bool operator==(Language a, Language b) noexcept {
    return a.index_ == b.index_;
  }
  friend std::strong_ordering operator<=>(Language a, Language b) noexcept {
    return a.index_ <=> b.index_;
  }

private:
  friend struct LanguageAccess;
  explicit constexpr Language(std::size_t index) : index_(index) {}
  std::size_t index_;
};

/// Resolve a name, ISO code, or common alias (case-insensitive).
/// Throws UnknownLanguage.
Language canonical_language(std::string_view tag);

/// Country/region → language group. Throws UnknownCountry.
Language culture_language_for(std::string_view country);

/// All 36 languages in list order: the 31 reasoning languages followed by
/// the culture-only groups (Danish, Irish, Scottish Gaelic, Maori, Norwegian).
std::span<const Language> all_languages();

/// The 31 languages usable as Step-1 reasoning languages.
std::span<const Language> reasoning_languages();

/// The ten multilingual math subsets (Bn De En Es Fr Ja Ru Sw Th Zh).
std::span<const Language> math_languages();

Language english();

/// Language group → countries/regions.
const std::map<std::string, std::vector<std::string>> &culture_country_map();

/// Built-in per-language sample quotas.
std::map<Language, std::size_t> math_quota();
std::map<Language, std::size_t> culture_quota();

} // namespace x1

#include "x1/language.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

#include "x1/error.hpp"

namespace x1 {

namespace {

struct Entry {
  const char *name;
  const char *code;
};

// Order matters: reasoning-language list first, culture-only groups after.
constexpr std::array<Entry, 36> kEntries{{
    {"Arabic", "ar"},     {"Bulgarian", "bg"},  {"Bengali", "bn"},
    {"German", "de"},     {"Greek", "el"},      {"English", "en"},
    {"Spanish", "es"},    {"Finnish", "fi"},    {"French", "fr"},
    {"Hebrew", "he"},     {"Hindi", "hi"},      {"Hungarian", "hu"},
    {"Indonesian", "id"}, {"Italian", "it"},    {"Japanese", "ja"},
    {"Korean", "ko"},     {"Malay", "ms"},      {"Dutch", "nl"},
    {"Polish", "pl"},     {"Portuguese", "pt"}, {"Romanian", "ro"},
    {"Russian", "ru"},    {"Swedish", "sv"},    {"Swahili", "sw"},
    {"Thai", "th"},       {"Tagalog", "tl"},    {"Turkish", "tr"},
    {"Ukrainian", "uk"},  {"Urdu", "ur"},       {"Vietnamese", "vi"},
    {"Chinese", "zh"},    {"Danish", "da"},     {"Irish", "ga"},
    {"Scottish Gaelic", "gd"}, {"Maori", "mi"}, {"Norwegian", "no"},
}};
constexpr std::size_t kReasoningCount = 31;

constexpr std::array<const char *, 10> kMathCodes{"bn", "de", "en", "es", "fr",
                                                  "ja", "ru", "sw", "th", "zh"};

const std::vector<std::pair<const char *, const char *>> kAliases{
    {"bangla", "bn"},       {"kiswahili", "sw"},    {"filipino", "tl"},
    {"fil", "tl"},          {"mandarin", "zh"},     {"iw", "he"},
    {"in", "id"},           {"nb", "no"},           {"nn", "no"},
    {"bokmal", "no"},       {"norwegian bokmal", "no"},
    {"gaelic", "gd"},       {"scots gaelic", "gd"}, {"scottish-gaelic", "gd"},
    {"scottish_gaelic", "gd"}, {"scottishgaelic", "gd"},
    {"māori", "mi"},        {"te reo maori", "mi"},
    {"bahasa indonesia", "id"}, {"bahasa melayu", "ms"},
    {"simplified chinese", "zh"}, {"traditional chinese", "zh"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const std::unordered_map<std::string, std::size_t> &lookup_table() {
  static const auto table = [] {
    std::unordered_map<std::string, std::size_t> t;
    for (std::size_t i = 0; i < kEntries.size(); ++i) {
      t.emplace(lower(kEntries[i].name), i);
      t.emplace(kEntries[i].code, i);
    }
    for (const auto &[alias, code] : kAliases) {
      auto it = t.find(code);
      if (it != t.end())
        t.emplace(alias, it->second);
    }
    return t;
  }();
  return table;
}

} // namespace

struct LanguageAccess {
  static Language make(std::size_t i) { return Language(i); }
};

namespace {

const std::vector<Language> &all_vec() {
  static const auto v = [] {
    std::vector<Language> out;
    for (std::size_t i = 0; i < kEntries.size(); ++i)
      out.push_back(LanguageAccess::make(i));
    return out;
  }();
  return v;
}

} // namespace

const std::string &Language::name() const noexcept {
  static const auto names = [] {
    std::array<std::string, kEntries.size()> n;
    for (std::size_t i = 0; i < kEntries.size(); ++i)
      n[i] = kEntries[i].name;
    return n;
  }();
  return names[index_];
}

const std::string &Language::code() const noexcept {
  static const auto codes = [] {
    std::array<std::string, kEntries.size()> c;
    for (std::size_t i = 0; i < kEntries.size(); ++i)
      c[i] = kEntries[i].code;
    return c;
  }();
  return codes[index_];
}

Language canonical_language(std::string_view tag) {
  const auto key = lower(trim(tag));
  const auto &table = lookup_table();
  if (auto it = table.find(key); it != table.end())
    return LanguageAccess::make(it->second);
  // Region-qualified codes such as "pt-BR" or "zh_Hans".
  if (auto cut = key.find_first_of("-_"); cut != std::string::npos) {
    if (auto it = table.find(key.substr(0, cut)); it != table.end())
      return LanguageAccess::make(it->second);
  }
  throw UnknownLanguage(std::string(tag));
}

const std::map<std::string, std::vector<std::string>> &culture_country_map() {
  static const std::map<std::string, std::vector<std::string>> m{
      {"Arabic",
       {"Algeria", "Arab", "Egypt", "Iraq", "Lebanon", "Syria", "Morocco",
        "Tunisia", "Jordan"}},
      {"Danish", {"Denmark"}},
      {"German", {"Germany", "Austria", "Switzerland"}},
      {"Greek", {"Greece", "Cyprus"}},
      {"English", {"United States"}},
      {"Spanish",
       {"Argentina", "Spain", "Cuba", "Chile", "Colombia",
        "Dominican Republic", "Mexico", "Peru"}},
      {"Finnish", {"Finland"}},
      {"French", {"France"}},
      {"Irish", {"Ireland"}},
      {"Scottish Gaelic", {"Scotland"}},
      {"Hindi", {"India"}},
      {"Indonesian", {"Indonesia"}},
      {"Italian", {"Italy"}},
      {"Japanese", {"Japan"}},
      {"Korean", {"Korea"}},
      {"Maori", {"New Zealand"}},
      {"Malay", {"Malaysia"}},
      {"Dutch", {"Netherlands", "Belgium"}},
      {"Norwegian", {"Norway"}},
      {"Polish", {"Poland"}},
      {"Portuguese", {"Brazil", "Portugal"}},
      {"Russian", {"Russia"}},
      {"Swedish", {"Sweden"}},
      {"Tagalog", {"Philippines"}},
      {"Chinese", {"China"}},
  };
  return m;
}

Language culture_language_for(std::string_view country) {
  static const auto index = [] {
    std::unordered_map<std::string, Language> idx;
    for (const auto &[group, countries] : culture_country_map()) {
      auto lang = canonical_language(group);
      for (const auto &c : countries)
        idx.emplace(lower(c), lang);
    }
    return idx;
  }();
  if (auto it = index.find(lower(trim(country))); it != index.end())
    return it->second;
  throw UnknownCountry(std::string(country));
}

std::span<const Language> all_languages() { return all_vec(); }

std::span<const Language> reasoning_languages() {
  return std::span<const Language>(all_vec()).first(kReasoningCount);
}

std::span<const Language> math_languages() {
  static const auto v = [] {
    std::vector<Language> out;
    for (auto code : kMathCodes)
      out.push_back(canonical_language(code));
    return out;
  }();
  return v;
}

Language english() { return LanguageAccess::make(5); }

std::map<Language, std::size_t> math_quota() {
  std::map<Language, std::size_t> q;
  for (auto l : math_languages())
    q.emplace(l, 200);
  return q;
}

std::map<Language, std::size_t> culture_quota() {
  static const std::array<std::pair<const char *, std::size_t>, 25> counts{{
      {"Arabic", 200},     {"Danish", 122},     {"German", 200},
      {"Greek", 100},      {"English", 200},    {"Spanish", 200},
      {"Finnish", 142},    {"French", 200},     {"Irish", 157},
      {"Scottish Gaelic", 125}, {"Hindi", 200}, {"Indonesian", 200},
      {"Italian", 200},    {"Japanese", 200},   {"Korean", 200},
      {"Maori", 141},      {"Malay", 130},      {"Dutch", 200},
      {"Norwegian", 173},  {"Polish", 123},     {"Portuguese", 200},
      {"Russian", 200},    {"Swedish", 200},    {"Tagalog", 200},
      {"Chinese", 200},
  }};
  std::map<Language, std::size_t> q;
  for (const auto &[name, n] : counts)
    q.emplace(canonical_language(name), n);
  return q;
}

} // namespace x1

#include "x1/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "x1/error.hpp"
#include "x1/jsonl.hpp"
#include "x1/scoring.hpp"

namespace x1 {

using nlohmann::json;

namespace {

using Key = std::pair<std::string, int>;

std::map<Key, const SampleResult *> index_results(const std::vector<SampleResult> &rs,
                                                  const char *what) {
  std::map<Key, const SampleResult *> idx;
  for (const auto &r : rs)
    if (!idx.emplace(Key{r.question_id, r.run_index}, &r).second)
      throw AlignmentMismatch(std::string("duplicate (question, run) in ") + what + ": " +
                              r.question_id + "#" + std::to_string(r.run_index));
  return idx;
}

// Pairs base/alt samples by (question, run); both sides must cover the same keys.
std::vector<std::pair<const SampleResult *, const SampleResult *>>
align(const std::vector<SampleResult> &base, const std::vector<SampleResult> &alt) {
  const auto a = index_results(base, "base");
  const auto b = index_results(alt, "alt");
  if (a.size() != b.size())
    throw AlignmentMismatch("result sets differ in size: " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  std::vector<std::pair<const SampleResult *, const SampleResult *>> out;
  out.reserve(a.size());
  for (const auto &[key, r] : a) {
    auto it = b.find(key);
    if (it == b.end())
      throw AlignmentMismatch("no counterpart for " + key.first + "#" +
                              std::to_string(key.second));
    out.emplace_back(r, it->second);
  }
  return out;
}

double pct(std::size_t count, std::size_t n) {
  return n == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(n);
}

} // namespace

AccuracyTable mean_at_k(const std::vector<SampleResult> &results) {
  AccuracyTable table;
  if (results.empty())
    return table;
  int runs = 0;
  for (const auto &r : results) {
    if (r.run_index < 0)
      throw IncompleteRuns("negative run index for " + r.question_id);
    runs = std::max(runs, r.run_index + 1);
  }
  std::map<std::string, std::vector<int>> cells;
  std::map<Language, std::vector<std::size_t>> correct;  // per run
  std::map<Language, std::set<std::string>> items;
  for (const auto &r : results) {
    auto &seen = cells[r.question_id];
    seen.resize(static_cast<std::size_t>(runs), 0);
    if (++seen[static_cast<std::size_t>(r.run_index)] > 1)
      throw IncompleteRuns("duplicate cell " + r.question_id + "#" +
                           std::to_string(r.run_index));
    auto &c = correct[r.language];
    c.resize(static_cast<std::size_t>(runs), 0);
    if (r.correct)
      ++c[static_cast<std::size_t>(r.run_index)];
    items[r.language].insert(r.question_id);
  }
  for (const auto &[id, seen] : cells)
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (seen[k] == 0)
        throw IncompleteRuns("missing run " + std::to_string(k) + " for " + id);

  double sum = 0.0;
  for (auto &[lang, per_run] : correct) {
    per_run.resize(static_cast<std::size_t>(runs), 0);
    const std::size_t n = items[lang].size();
    double acc = 0.0;
    for (auto c : per_run)
      acc += pct(c, n);
    acc /= runs;
    table.per_language[lang] = acc;
    sum += acc;
  }
  table.overall = sum / static_cast<double>(table.per_language.size());
  table.runs = runs;
  return table;
}

double cross_language_std(const std::map<Language, double> &per_language) {
  if (per_language.size() < 2)
    throw ValidationError("cross-language std needs at least two languages");
  double mean = 0.0;
  for (const auto &[l, v] : per_language)
    mean += v;
  mean /= static_cast<double>(per_language.size());
  double ss = 0.0;
  for (const auto &[l, v] : per_language)
    ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(per_language.size()));
}

WtlRates win_tie_lose(const std::vector<SampleResult> &base,
                      const std::vector<SampleResult> &alt) {
  std::size_t win = 0, lose = 0, tc = 0, ti = 0;
  const auto pairs = align(base, alt);
  for (const auto &[b, a] : pairs) {
    if (a->correct && !b->correct)
      ++win;
    else if (b->correct && !a->correct)
      ++lose;
    else if (a->correct)
      ++tc;
    else
      ++ti;
  }
  const auto n = pairs.size();
  return WtlRates{pct(win, n), pct(tc, n), pct(ti, n), pct(lose, n), n};
}

BenefitReport benefit_harm(const std::vector<SampleResult> &backbone,
                           const std::vector<SampleResult> &adaptive) {
  BenefitReport rep;
  const auto pairs = align(backbone, adaptive);
  for (const auto &[b, a] : pairs) {
    if (!a->switched)
      continue;
    ++rep.switched_count;
    if (!b->correct && a->correct)
      ++rep.benefit_count;
    else if (b->correct && !a->correct)
      ++rep.harm_count;
  }
  rep.n = pairs.size();
  rep.benefit_rate = pct(rep.benefit_count, rep.n);
  rep.harm_rate = pct(rep.harm_count, rep.n);
  rep.net_benefit = rep.benefit_rate - rep.harm_rate;
  return rep;
}

std::optional<double> spearman(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 2)
    return std::nullopt;
  auto ranks = [](const std::vector<double> &v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]])
        ++j;
      const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
      for (std::size_t k = i; k <= j; ++k)
        r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0)
    return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

FrequencyReport think_language_frequency(
    const std::vector<SampleResult> &results,
    const std::optional<std::map<Language, double>> &backbone_accuracy) {
  FrequencyReport rep;
  std::map<Language, std::map<Language, std::size_t>> counts;
  std::map<Language, std::size_t> totals;
  for (const auto &r : results) {
    if (!r.chosen_think_language)
      continue;
    ++counts[r.language][*r.chosen_think_language];
    ++totals[r.language];
  }
  for (const auto &[subset, by_lang] : counts)
    for (const auto &[lang, c] : by_lang)
      rep.per_subset[subset][lang] = pct(c, totals[subset]);

  if (backbone_accuracy) {
    std::vector<double> native, acc;
    for (const auto &[subset, dist] : rep.per_subset) {
      auto a = backbone_accuracy->find(subset);
      if (a == backbone_accuracy->end())
        continue;
      auto n = dist.find(subset);
      native.push_back(n == dist.end() ? 0.0 : n->second);
      acc.push_back(a->second);
    }
    rep.native_vs_accuracy_spearman = spearman(native, acc);
  }
  return rep;
}

VoteResult majority_vote(const std::map<Language, std::string> &answers,
                         const std::optional<GoldAnswer> &gold) {
  struct Entry {
    Decimal value;
    std::size_t votes;
    std::size_t first_order;
  };
  std::vector<Entry> entries;
  VoteResult out;
  // std::map<Language, ...> iterates in language-list order.
  for (const auto &[lang, text] : answers) {
    Decimal v;
    try {
      v = extract_numeric_answer(text);
    } catch (const NoNumberFound &) {
      out.invalid.push_back(lang);
      continue;
    }
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const Entry &e) { return e.value == v; });
    if (it == entries.end())
      entries.push_back({v, 1, lang.order()});
    else
      ++it->votes;
  }
  if (entries.empty())
    throw AllVotesInvalid();
  const Entry *best = &entries.front();
  for (const auto &e : entries)
    if (e.votes > best->votes || (e.votes == best->votes && e.first_order < best->first_order))
      best = &e;
  out.winner = best->value;
  for (const auto &e : entries)
    out.tally[e.value.to_string()] = e.votes;
  if (gold && gold->kind == GoldAnswer::Kind::numeric && gold->numeric_value)
    out.correct = out.winner == *gold->numeric_value;
  return out;
}

MixingReport mixing_benefit_report(const std::vector<SampleResult> &backbone,
                                   const std::vector<SampleResult> &adaptive) {
  MixingReport rep;
  const auto pairs = align(backbone, adaptive);
  rep.n = pairs.size();
  for (const auto &[b, a] : pairs) {
    if (a->switched)
      continue;
    ++rep.non_switched;
    MixingBucket &bucket = a->mixing_rate > b->mixing_rate   ? rep.increased
                           : a->mixing_rate < b->mixing_rate ? rep.decreased
                                                             : rep.unchanged;
    ++bucket.count;
    if (!b->correct && a->correct)
      ++bucket.benefit;
    else if (b->correct && !a->correct)
      ++bucket.harm;
  }
  for (auto *bucket : {&rep.increased, &rep.decreased, &rep.unchanged})
    bucket->net_benefit = pct(bucket->benefit, rep.n) - pct(bucket->harm, rep.n);
  return rep;
}

std::map<std::string, ComplianceRates> compliance_table(const std::vector<SampleResult> &results) {
  struct Counts {
    std::size_t thinking = 0, answer = 0, both = 0, n = 0;
  };
  std::map<std::string, Counts> counts;
  for (const auto &r : results) {
    for (const auto &key : {std::string("all"), r.language.name()}) {
      auto &c = counts[key];
      ++c.n;
      c.thinking += r.compliance.thinking;
      c.answer += r.compliance.answer;
      c.both += r.compliance.thinking && r.compliance.answer;
    }
  }
  std::map<std::string, ComplianceRates> out;
  for (const auto &[k, c] : counts)
    out[k] = ComplianceRates{pct(c.thinking, c.n), pct(c.answer, c.n), pct(c.both, c.n), c.n};
  return out;
}

// --- serialization -------------------------------------------------------------

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0')
      s.pop_back();
    if (s.back() == '.')
      s.pop_back();
  }
  if (s == "-0")
    s = "0";
  return s;
}

json to_json(const AccuracyTable &t) {
  json per = json::object();
  for (const auto &[l, v] : t.per_language)
    per[l.name()] = v;
  json j{{"per_language", per}, {"overall", t.overall}, {"runs", t.runs}};
  if (t.per_language.size() >= 2)
    j["cross_language_std"] = cross_language_std(t.per_language);
  return j;
}

json to_json(const WtlRates &r) {
  return json{{"win", r.win},
              {"tie_correct", r.tie_correct},
              {"tie_incorrect", r.tie_incorrect},
              {"lose", r.lose},
              {"n", r.n}};
}

json to_json(const BenefitReport &r) {
  return json{{"benefit_rate", r.benefit_rate}, {"harm_rate", r.harm_rate},
              {"net_benefit", r.net_benefit},   {"benefit_count", r.benefit_count},
              {"harm_count", r.harm_count},     {"switched_count", r.switched_count},
              {"n", r.n}};
}

json to_json(const FrequencyReport &r) {
  json per = json::object();
  for (const auto &[subset, dist] : r.per_subset) {
    json d = json::object();
    for (const auto &[l, v] : dist)
      d[l.name()] = v;
    per[subset.name()] = d;
  }
  json j{{"per_subset", per}};
  j["native_vs_accuracy_spearman"] =
      r.native_vs_accuracy_spearman ? json(*r.native_vs_accuracy_spearman) : json(nullptr);
  return j;
}

namespace {

json bucket_json(const MixingBucket &b) {
  return json{{"count", b.count},
              {"benefit", b.benefit},
              {"harm", b.harm},
              {"net_benefit", b.net_benefit}};
}

} // namespace

json to_json(const MixingReport &r) {
  return json{{"increased", bucket_json(r.increased)},
              {"decreased", bucket_json(r.decreased)},
              {"unchanged", bucket_json(r.unchanged)},
              {"non_switched", r.non_switched},
              {"n", r.n}};
}

json to_json(const VoteResult &r) {
  json invalid = json::array();
  for (auto l : r.invalid)
    invalid.push_back(l.name());
  return json{{"winner", r.winner.to_string()},
              {"correct", r.correct},
              {"tally", r.tally},
              {"invalid", invalid}};
}

json to_json(const std::map<std::string, ComplianceRates> &t) {
  json j = json::object();
  for (const auto &[k, r] : t)
    j[k] = json{{"thinking", r.thinking}, {"answer", r.answer}, {"both", r.both}, {"n", r.n}};
  return j;
}

CsvTable to_csv(const AccuracyTable &t) {
  CsvTable rows{{"language", "accuracy"}};
  for (const auto &[l, v] : t.per_language)
    rows.push_back({l.name(), format_number(v)});
  rows.push_back({"Average", format_number(t.overall)});
  if (t.per_language.size() >= 2)
    rows.push_back({"Std", format_number(cross_language_std(t.per_language))});
  return rows;
}

CsvTable to_csv(const WtlRates &r) {
  return {{"win", "tie_correct", "tie_incorrect", "lose", "n"},
          {format_number(r.win), format_number(r.tie_correct), format_number(r.tie_incorrect),
           format_number(r.lose), std::to_string(r.n)}};
}

CsvTable to_csv(const BenefitReport &r) {
  return {{"benefit_rate", "harm_rate", "net_benefit", "benefit_count", "harm_count",
           "switched_count", "n"},
          {format_number(r.benefit_rate), format_number(r.harm_rate),
           format_number(r.net_benefit), std::to_string(r.benefit_count),
           std::to_string(r.harm_count), std::to_string(r.switched_count),
           std::to_string(r.n)}};
}

CsvTable to_csv(const FrequencyReport &r) {
  CsvTable rows{{"subset", "thinking_language", "percent"}};
  for (const auto &[subset, dist] : r.per_subset)
    for (const auto &[l, v] : dist)
      rows.push_back({subset.name(), l.name(), format_number(v)});
  return rows;
}

CsvTable to_csv(const MixingReport &r) {
  CsvTable rows{{"bucket", "count", "benefit", "harm", "net_benefit"}};
  auto add = [&](const char *name, const MixingBucket &b) {
    rows.push_back({name, std::to_string(b.count), std::to_string(b.benefit),
                    std::to_string(b.harm), format_number(b.net_benefit)});
  };
  add("increased", r.increased);
  add("decreased", r.decreased);
  add("unchanged", r.unchanged);
  return rows;
}

CsvTable to_csv(const std::map<std::string, ComplianceRates> &t) {
  CsvTable rows{{"subset", "thinking", "answer", "both", "n"}};
  for (const auto &[k, r] : t)
    rows.push_back({k, format_number(r.thinking), format_number(r.answer),
                    format_number(r.both), std::to_string(r.n)});
  return rows;
}

std::string render_csv(const CsvTable &table) {
  std::string out;
  for (const auto &row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        out += ',';
      const auto &f = row[i];
      if (f.find_first_of(",\"\n") == std::string::npos) {
        out += f;
        continue;
      }
      out += '"';
      for (char c : f) {
        if (c == '"')
          out += '"';
        out += c;
      }
      out += '"';
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path &path, const CsvTable &table) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  write_text_file(path, render_csv(table));
}

} // namespace x1

namespace nlohmann {

x1::SampleResult adl_serializer<x1::SampleResult>::from_json(const json &j) {
  x1::SampleResult r{.question_id = j.at("question_id").get<std::string>(),
                     .language = j.at("language").get<x1::Language>()};
  r.run_index = j.value("run_index", 0);
  r.correct = j.at("correct").get<bool>();
  r.raw_score = j.value("raw_score", r.correct ? 10.0 : 0.0);
  if (auto it = j.find("chosen_think_language"); it != j.end() && !it->is_null())
    r.chosen_think_language = it->get<x1::Language>();
  r.switched = j.value("switched", false);
  if (auto it = j.find("compliance"); it != j.end() && it->is_object()) {
    r.compliance.thinking = it->value("thinking", false);
    r.compliance.answer = it->value("answer", false);
    r.compliance.both = it->value("both", r.compliance.thinking && r.compliance.answer);
  }
  r.mixing_rate = j.value("mixing_rate", 0.0);
  r.truncated = j.value("truncated", false);
  if (auto it = j.find("error"); it != j.end() && it->is_string())
    r.error = it->get<std::string>();
  return r;
}

void adl_serializer<x1::SampleResult>::to_json(json &j, const x1::SampleResult &v) {
  j = json{{"question_id", v.question_id},
           {"language", v.language},
           {"run_index", v.run_index},
           {"correct", v.correct},
           {"raw_score", v.raw_score},
           {"chosen_think_language",
            v.chosen_think_language ? json(*v.chosen_think_language) : json(nullptr)},
           {"switched", v.switched},
           {"compliance",
            {{"thinking", v.compliance.thinking},
             {"answer", v.compliance.answer},
             {"both", v.compliance.both}}},
           {"mixing_rate", v.mixing_rate},
           {"truncated", v.truncated}};
  if (v.error)
    j["error"] = *v.error;
}

} // namespace nlohmann

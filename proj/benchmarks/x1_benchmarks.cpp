#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "x1/langid.hpp"
#include "x1/repeat_guard.hpp"
#include "x1/scoring.hpp"
#include "x1/template.hpp"

using namespace x1;

namespace {

std::string random_text(std::size_t n, std::size_t alphabet, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(static_cast<char>('a' + rng() % alphabet));
  return s;
}

// Non-repeating stream fed in 16-byte deltas; the guard never fires.
void BM_RepeatGuardStream(benchmark::State &state) {
  const auto text = random_text(static_cast<std::size_t>(state.range(0)), 26, 1);
  for (auto _ : state) {
    RepeatGuard g(256);
    for (std::size_t i = 0; i < text.size(); i += 16)
      benchmark::DoNotOptimize(g.feed(std::string_view(text).substr(i, 16)));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_RepeatGuardStream)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 18);

void BM_ParseResponse(benchmark::State &state) {
  const auto trace = random_text(static_cast<std::size_t>(state.range(0)), 20, 2);
  const auto raw = render_think_response(canonical_language("Japanese"), trace, "The answer is 42.");
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_response(raw));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * raw.size()));
}
BENCHMARK(BM_ParseResponse)->Arg(1 << 10)->Arg(1 << 16);

void BM_DetectLanguage(benchmark::State &state) {
  const LanguageDetector detector;
  const std::string text =
      "Zuerst addieren wir die beiden Zahlen. Danach teilen wir das Ergebnis durch drei, "
      "damit wir den Anteil jedes Kindes erhalten.";
  for (auto _ : state)
    benchmark::DoNotOptimize(detector.try_detect(text));
}
BENCHMARK(BM_DetectLanguage);

void BM_ExtractNumericAnswer(benchmark::State &state) {
  const std::string text =
      "<think>\nShe buys 3 boxes of 12 eggs, so 36 eggs in total.\n</think>\n\n"
      "She pays ৳1,250.50 in total, so the answer is 1,250.5";
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_numeric_answer(text));
}
BENCHMARK(BM_ExtractNumericAnswer);

} // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "limitkit/search.hpp"
#include "limitkit/whitehead.hpp"

using namespace limitkit;

namespace {

Word random_reduced(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(2 * rank - 1));
  std::vector<Letter> raw;
  while (raw.size() < len) {
    Letter l = letter_from_rank(letter(rng));
    if (!raw.empty() && raw.back() == -l) continue;
    raw.push_back(l);
  }
  return Word(std::move(raw));
}

void whitehead(benchmark::State& state, Exec exec) {
  const auto rank = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<Word> words;
  for (int i = 0; i < 8; ++i) words.push_back(random_reduced(rng, rank, 40));
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(whitehead_minimize(w, rank, exec));
}

void BM_WhiteheadSerial(benchmark::State& s) { whitehead(s, Exec::serial); }
void BM_WhiteheadParallel(benchmark::State& s) { whitehead(s, Exec::parallel); }

// Exhaustive rf probe: every tuple up to the budget is evaluated.
void rf_search(benchmark::State& state, Exec exec) {
  const Alphabet a{"a"};
  const Presentation torsion(a, {parse_word("a^2", a)});
  SearchBudget b;
  b.max_len = static_cast<std::size_t>(state.range(0));
  b.rank = 2;
  for (auto _ : state) benchmark::DoNotOptimize(residually_free_probe(torsion, Word::generator(0), b, exec));
}

// orf search on Z^3 separating {a, b, c, abc}.
void orf_search(benchmark::State& state, Exec exec) {
  const Alphabet abc{"a", "b", "c"};
  const auto Z3 = Presentation::free_abelian(abc);
  const std::vector<Word> X{parse_word("a", abc), parse_word("b", abc), parse_word("c", abc),
                            parse_word("a b c", abc)};
  SearchBudget b;
  b.max_len = static_cast<std::size_t>(state.range(0));
  b.rank = 2;
  for (auto _ : state) benchmark::DoNotOptimize(orf_witness_search(Z3, X, b, exec));
}

void BM_RfSearchSerial(benchmark::State& s) { rf_search(s, Exec::serial); }
void BM_RfSearchParallel(benchmark::State& s) { rf_search(s, Exec::parallel); }
void BM_OrfSearchSerial(benchmark::State& s) { orf_search(s, Exec::serial); }
void BM_OrfSearchParallel(benchmark::State& s) { orf_search(s, Exec::parallel); }

}  // namespace

BENCHMARK(BM_WhiteheadSerial)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WhiteheadParallel)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK(BM_RfSearchSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RfSearchParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrfSearchSerial)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrfSearchParallel)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

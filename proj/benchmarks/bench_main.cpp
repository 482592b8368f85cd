#include <benchmark/benchmark.h>

#include <random>

#include "rauzy/appendix.hpp"
#include "rauzy/gasket.hpp"
#include "rauzy/linalg.hpp"
#include "rauzy/poincare.hpp"
#include "rauzy/random_walk.hpp"
#include "rauzy/words.hpp"

using namespace rauzy;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(1 + static_cast<int>(rng() % 3));
  return w;
}

void BM_SingularValues(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Mat3> ms;
  for (int i = 0; i < 256; ++i) ms.push_back(word_to_matrix(random_word(rng, static_cast<std::size_t>(state.range(0)))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(ms[i++ % ms.size()]));
}
BENCHMARK(BM_SingularValues)->Arg(8)->Arg(40)->Arg(400);

void BM_WordToMatrix(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Word w = random_word(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(word_to_matrix(w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WordToMatrix)->Arg(16)->Arg(256)->Arg(4096);

void BM_CountWords(benchmark::State& state) {
  EnumFilter f;
  f.max_length = static_cast<int>(state.range(0));
  EnumOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(count_words(f, o));
}
BENCHMARK(BM_CountWords)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_PoincareSum(benchmark::State& state) {
  EnumFilter f;
  f.max_length = static_cast<int>(state.range(0));
  EnumOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(partial_poincare_sum(f, 1.7, o));
}
BENCHMARK(BM_PoincareSum)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_AdaptiveCover(benchmark::State& state) {
  const double delta = 1.0 / static_cast<double>(state.range(0));
  CoverOptions o;
  o.enumeration.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_cover(delta, 1.7, o));
}
BENCHMARK(BM_AdaptiveCover)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LyapunovSpectrum(benchmark::State& state) {
  const MeasureSpec nu = MeasureSpec::uniform({Word::parse("1"), Word::parse("2"), Word::parse("3")});
  LyapunovOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_spectrum(nu, state.range(0), 8, 42, o));
}
BENCHMARK(BM_LyapunovSpectrum)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LemmaA1(benchmark::State& state) {
  EnumOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lemma_a1_check(static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_LemmaA1)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

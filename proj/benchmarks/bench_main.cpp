#include <benchmark/benchmark.h>

#include <random>

#include "selfless/checker.hpp"
#include "selfless/numeric.hpp"
#include "selfless/text.hpp"

namespace {

using namespace selfless;

std::vector<Syllable> random_syllables(const PresentationPtr& p, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> factor(0, p->size() - 1);
  std::uniform_int_distribution<long> exp(-3, 3);
  std::vector<Syllable> out;
  while (out.size() < n) {
    if (long e = exp(rng); e != 0) out.emplace_back(factor(rng), e);
  }
  return out;
}

void BM_Reduce(benchmark::State& state) {
  auto p = parse_presentation("F2");
  const auto raw = random_syllables(p, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(raw, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Reduce)->Range(8, 4096);

void BM_MultiplyCancelling(benchmark::State& state) {
  auto p = parse_presentation("F2");
  const auto x = reduce(random_syllables(p, static_cast<std::size_t>(state.range(0)), 2), p);
  const auto y = invert(x) * parse_word("b a", p);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_MultiplyCancelling)->Range(8, 4096);

void BM_AxialPower(benchmark::State& state) {
  auto p = parse_presentation("F2");
  const auto z = parse_word("a^5 b a^5", p);
  for (auto _ : state) benchmark::DoNotOptimize(power(z, state.range(0)));
}
BENCHMARK(BM_AxialPower)->Range(2, 1024);

void BM_Check(benchmark::State& state, ScanStrategy strategy) {
  auto p = parse_presentation("F2");
  const auto f = parse_word_list("a,b,a b,a^-1 b", p);
  const auto u = parse_word("a^2 b a^2", p);
  CheckParams params;
  params.N = static_cast<int>(state.range(0));
  params.epsilon = 1e-9;
  params.strategy = strategy;
  std::uint64_t templates = 0;
  for (auto _ : state) {
    auto r = check_group(p, f, u, params);
    templates = r.templates_checked;
    benchmark::DoNotOptimize(r);
  }
  state.counters["templates"] = static_cast<double>(templates);
}
BENCHMARK_CAPTURE(BM_Check, exhaustive, ScanStrategy::exhaustive)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Check, meet_in_middle, ScanStrategy::meet_in_middle)
    ->DenseRange(3, 6)
    ->Unit(benchmark::kMillisecond);

void BM_CheckNonMonomial(benchmark::State& state) {
  auto p = parse_presentation("F2");
  const auto f = parse_element_list("1 + b, b - (1/2)*a b", p);
  const auto u = parse_word("a^2 b a^2", p);
  CheckParams params;
  params.N = static_cast<int>(state.range(0));
  params.epsilon = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(check_algebra(f, u, params));
}
BENCHMARK(BM_CheckNonMonomial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_HaarUnitary(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(k, derive_seed(3, i++)));
}
BENCHMARK(BM_HaarUnitary)->RangeMultiplier(2)->Range(4, 128);

void BM_CheckMatrix(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  MatrixSpace space(k);
  const auto f = diagonal_phase_family(k);
  const auto u = haar_unitary(k, 11);
  CheckParams params;
  params.N = 3;
  params.epsilon = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(check_matrix(space, f, u, params));
}
BENCHMARK(BM_CheckMatrix)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

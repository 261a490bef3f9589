#include <benchmark/benchmark.h>

#include <random>

#include "randstream/analysis.hpp"
#include "randstream/coin_extractor.hpp"
#include "randstream/dice_extractor.hpp"
#include "randstream/markov_extractor.hpp"
#include "randstream/von_neumann.hpp"

namespace {

using namespace randstream;

constexpr std::size_t kSymbols = 1 << 16;

CoinSequence biased_coins(double p) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution heads(p);
  CoinSequence out(kSymbols);
  for (auto& s : out) s = heads(rng) ? CoinSymbol::H : CoinSymbol::T;
  return out;
}

// Argument: depth limit, -1 for unlimited.
void BM_CoinExtractor(benchmark::State& state) {
  const auto input = biased_coins(0.3);
  const DepthLimit depth =
      state.range(0) < 0 ? DepthLimit{} : DepthLimit{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    CoinExtractor ex(depth);
    BitVector out;
    out.reserve(kSymbols);
    for (auto s : input) ex.process_into(s, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSymbols));
}
BENCHMARK(BM_CoinExtractor)->Arg(0)->Arg(3)->Arg(7)->Arg(15)->Arg(-1);

void BM_VonNeumann(benchmark::State& state) {
  const auto input = biased_coins(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(von_neumann(input));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSymbols));
}
BENCHMARK(BM_VonNeumann);

void BM_DiceForest(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<DieFace> die(0, m - 1);
  std::vector<DieFace> faces(kSymbols);
  for (auto& f : faces) f = die(rng);
  for (auto _ : state) {
    BinarizationForest forest(m, 15);
    BitVector out;
    for (DieFace f : faces) forest.process_into(f, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSymbols));
}
BENCHMARK(BM_DiceForest)->Arg(3)->Arg(6)->Arg(256);

void BM_Markov(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<ChainState> step(0, 3);
  std::vector<ChainState> chain(kSymbols);
  for (auto& s : chain) s = step(rng);
  for (auto _ : state) {
    MarkovExtractor ex(4, 15);
    BitVector out;
    for (ChainState s : chain) ex.process_into(s, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSymbols));
}
BENCHMARK(BM_Markov);

void BM_Rho(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rho(0.3, depth));
}
BENCHMARK(BM_Rho)->Arg(7)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

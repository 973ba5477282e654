#include <benchmark/benchmark.h>

#include <random>

#include "scorenet/euler.h"
#include "scorenet/generate.h"
#include "scorenet/pcset.h"
#include "scorenet/segmentation.h"
#include "scorenet/sequence.h"

#ifdef SCORENET_BENCH_FIXTURES
#include "fixtures.h"
#include "scorenet/pipeline.h"
#endif

namespace {

using scorenet::PitchClassSet;

std::vector<PitchClassSet> random_sets(std::size_t n, std::size_t max_size, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<PitchClassSet> out;
  while (out.size() < n) {
    std::vector<int> pcs;
    const std::size_t k = 1 + engine() % max_size;
    for (std::size_t i = 0; i < k; ++i) pcs.push_back(static_cast<int>(engine() % 12));
    out.push_back(PitchClassSet::from_pitches(pcs));
  }
  return out;
}

// Piecewise-constant walk over a small alphabet with occasional noise.
scorenet::LabeledSeries regime_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  scorenet::ChordSequence seq;
  const auto sets = random_sets(30, 4, seed + 1);
  std::size_t regime = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 80 == 0) regime = engine() % 6;
    const std::size_t pick = engine() % 10 == 0 ? engine() % sets.size() : regime * 4 + engine() % 4;
    seq.events.push_back({i, 1 + static_cast<int>(i / 4), sets[pick]});
  }
  return scorenet::build_series(seq);
}

void BM_VoiceLeadingDistance(benchmark::State& state) {
  const auto sets = random_sets(256, static_cast<std::size_t>(state.range(0)), 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scorenet::vl_distance(sets[i % 256], sets[(i * 7 + 1) % 256]));
    ++i;
  }
}
BENCHMARK(BM_VoiceLeadingDistance)->Arg(3)->Arg(4)->Arg(6);

void BM_BinarySegmentation(benchmark::State& state) {
  const auto series = regime_series(static_cast<std::size_t>(state.range(0)), 5);
  const auto model = scorenet::choose_gamma(series);
  for (auto _ : state) benchmark::DoNotOptimize(scorenet::binary_segmentation(series, 3.0, model));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BinarySegmentation)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

void BM_EulerizeDirected(benchmark::State& state) {
  const auto series = regime_series(static_cast<std::size_t>(state.range(0)), 8);
  const auto network = scorenet::build_network(series);
  for (auto _ : state) {
    const auto g = scorenet::eulerize_directed(network);
    benchmark::DoNotOptimize(scorenet::euler_circuit(g, series.values.front()));
  }
}
BENCHMARK(BM_EulerizeDirected)->Arg(500)->Arg(2000);

void BM_BarabasiAlbert(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scorenet::barabasi_albert({n, 2, 1}));
}
BENCHMARK(BM_BarabasiAlbert)->Arg(100)->Arg(1000)->Arg(10000);

void BM_EulerizeUndirected(benchmark::State& state) {
  const auto g = scorenet::barabasi_albert({static_cast<std::size_t>(state.range(0)), 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(scorenet::eulerize_undirected(g));
}
BENCHMARK(BM_EulerizeUndirected)->Arg(50)->Arg(500);

#ifdef SCORENET_BENCH_FIXTURES
void BM_AnalyzePipeline(benchmark::State& state) {
  const auto bars = static_cast<int>(state.range(0));
  const auto path = fixture::write_temp("bench_" + std::to_string(bars) + ".musicxml", fixture::long_score(bars, 1));
  const scorenet::RunConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(scorenet::analyze_score(path, config));
}
BENCHMARK(BM_AnalyzePipeline)->Arg(60)->Arg(300)->Unit(benchmark::kMillisecond);
#endif

}  // namespace

BENCHMARK_MAIN();

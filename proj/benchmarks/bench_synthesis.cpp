#include <benchmark/benchmark.h>

#include "cdsynth/onehot.hpp"
#include "cdsynth/synth_boolean.hpp"

namespace {

using cdsynth::Backend;

Backend backend_of(const benchmark::State& state) { return state.range(1) ? Backend::GlobalTunable : Backend::FanOut; }

void BM_QramOneHot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::synth_qram_onehot(n, backend_of(state)));
}
BENCHMARK(BM_QramOneHot)->ArgsProduct({{2, 4, 8, 16}, {0, 1}});

void BM_QragOneHot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::synth_qrag_onehot(n, backend_of(state)));
}
BENCHMARK(BM_QragOneHot)->ArgsProduct({{2, 4, 8}, {0, 1}});

void BM_QramFourier(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::synth_qram_fourier(n, backend_of(state)));
}
BENCHMARK(BM_QramFourier)->ArgsProduct({{2, 4, 8}, {0, 1}});

void BM_FinF2Majority(benchmark::State& state) {
  const auto f = cdsynth::majority_function(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::synth_fin_f2(f, backend_of(state)));
}
BENCHMARK(BM_FinF2Majority)->ArgsProduct({{3, 5, 7}, {0, 1}});

void BM_ExpandAnds(benchmark::State& state) {
  const Backend backend = backend_of(state);
  const auto c = cdsynth::synth_qram_onehot(static_cast<int>(state.range(0)), backend);
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::expand_ands(c, backend));
}
BENCHMARK(BM_ExpandAnds)->ArgsProduct({{4, 8}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "cdsynth/onehot.hpp"
#include "cdsynth/simulator.hpp"

namespace {

// One basis query through the one-hot QRAM: the sparse path should keep the support tiny.
void BM_QramBasisQuery(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = cdsynth::synth_qram_onehot(n, cdsynth::Backend::FanOut);
  const auto key = cdsynth::logical_basis_key(c, 1);
  std::size_t peak = 0;
  for (auto _ : state) {
    const auto result = cdsynth::simulate(c, cdsynth::SparseState(c.num_qubits(), {{key, 1.0}}), {.fuse = false});
    for (auto s : result.support_after_layer) peak = std::max(peak, s);
    benchmark::DoNotOptimize(result.state.support());
  }
  state.counters["qubits"] = c.num_qubits();
  state.counters["peak_support"] = static_cast<double>(peak);
}
BENCHMARK(BM_QramBasisQuery)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_VerifyQramSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto backend = state.range(1) ? cdsynth::Backend::GlobalTunable : cdsynth::Backend::FanOut;
  const auto c = cdsynth::synth_qram_onehot(n, backend);
  const auto expected = cdsynth::expected_qram(n);
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::verify_map(c, expected).max_deviation);
}
BENCHMARK(BM_VerifyQramSweep)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ExpandedFanOutSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = cdsynth::expand_ands(cdsynth::synth_qram_onehot(n, cdsynth::Backend::FanOut), cdsynth::Backend::FanOut);
  const auto expected = cdsynth::expected_qram(n);
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::verify_map(c, expected).max_deviation);
}
BENCHMARK(BM_ExpandedFanOutSweep)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

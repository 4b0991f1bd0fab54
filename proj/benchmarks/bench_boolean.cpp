#include <benchmark/benchmark.h>

#include <random>

#include "cdsynth/boolean.hpp"

namespace {

cdsynth::RealFunction random_real(int n) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> table(std::size_t{1} << n);
  for (auto& v : table) v = value(rng);
  return cdsynth::RealFunction(n, std::move(table));
}

void BM_FourierTransform(benchmark::State& state) {
  const auto f = random_real(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::fourier_transform(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierTransform)->DenseRange(4, 16, 4);

void BM_MobiusTransform(benchmark::State& state) {
  const auto f = random_real(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::mobius_transform(f));
}
BENCHMARK(BM_MobiusTransform)->DenseRange(4, 16, 4);

void BM_JuntaStructure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = cdsynth::selection_function(n).to_real();
  cdsynth::Mask data = 0;
  for (int i = 0; i < n; ++i) data |= cdsynth::variable_bit(f.arity(), i);
  for (auto _ : state) benchmark::DoNotOptimize(cdsynth::junta_structure(f, data));
}
BENCHMARK(BM_JuntaStructure)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();

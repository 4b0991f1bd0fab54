#include <gtest/gtest.h>

#include "cdsynth/memory.hpp"
#include "cdsynth/onehot.hpp"
#include "cdsynth/simulator.hpp"
#include "oracles/brute.hpp"
#include "oracles/checks.hpp"

using namespace cdsynth;

TEST(ComposeQram, TwoQragCallsMatchQram) {
  for (auto backend : oracle::kBackends) {
    for (int n : {2, 4}) {
      const auto composed = compose_qram_from_qrag(n, backend);
      EXPECT_EQ(composed.oracle_calls, 2);
      EXPECT_EQ(composed.glue_two_qubit_gates, 3);
      EXPECT_EQ(composed.workspace_qubits, 1);
      EXPECT_EQ(composed.hadamards, 0);
      EXPECT_TRUE(validate(composed.circuit).empty());
      oracle::expect_basis(composed.circuit, oracle::qram_map(n));
      if (n == 2) oracle::expect_superpositions(composed.circuit, oracle::qram_map(n));
    }
  }
}

TEST(ComposeQrag, ThreeQramCallsMatchQrag) {
  for (auto backend : oracle::kBackends) {
    for (int n : {2, 4}) {
      const auto composed = compose_qrag_from_qram(n, backend);
      EXPECT_EQ(composed.oracle_calls, 3);
      EXPECT_EQ(composed.hadamards, 2 * (n + 1));
      EXPECT_EQ(composed.workspace_qubits, 0);
      EXPECT_TRUE(validate(composed.circuit).empty());
      oracle::expect_basis(composed.circuit, oracle::qrag_map(n));
      if (n == 2) oracle::expect_superpositions(composed.circuit, oracle::qrag_map(n));
    }
  }
}

TEST(ComposeMemory, ResourcesScaleWithCalls) {
  for (int n : {2, 4}) {
    const auto direct = resources(synth_qrag_onehot(n, Backend::GlobalTunable));
    const auto composed = resources(compose_qram_from_qrag(n, Backend::GlobalTunable).circuit);
    EXPECT_EQ(composed.gt_count, 2 * direct.gt_count);
    EXPECT_EQ(composed.ancilla_count, direct.ancilla_count + 1);
    EXPECT_EQ(composed.depth, 2 * direct.depth + 3);

    const auto qram = resources(synth_qram_onehot(n, Backend::FanOut));
    const auto tripled = resources(compose_qrag_from_qram(n, Backend::FanOut).circuit);
    EXPECT_EQ(tripled.fanout_count, 3 * qram.fanout_count);
    EXPECT_EQ(tripled.depth, 3 * qram.depth + 2);
  }
}

TEST(RemapLayers, RelabelsEveryQubit) {
  const std::vector<Layer> layers{{gate::FanOut{0, {1, 2}}, gate::Phase{3, 0.5}},
                                  {gate::GlobalTunable(std::vector<gate::Coupling>{{0, 3, 0.25}})},
                                  {gate::ControlledSwap{0, 1, 2}}};
  const std::vector<Qubit> map{7, 5, 6, 4};
  const auto out = remap_layers(layers, map);
  ASSERT_EQ(out.size(), 3U);
  EXPECT_EQ(std::get<gate::FanOut>(out[0][0]), (gate::FanOut{7, {5, 6}}));
  EXPECT_EQ(std::get<gate::Phase>(out[0][1]), (gate::Phase{4, 0.5}));
  const auto& gt = std::get<gate::GlobalTunable>(out[1][0]);
  ASSERT_EQ(gt.couplings().size(), 1U);
  EXPECT_EQ(gt.couplings()[0].theta, 0.25);
  EXPECT_EQ(std::get<gate::ControlledSwap>(out[2][0]), (gate::ControlledSwap{7, 5, 6}));
}

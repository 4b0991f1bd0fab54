#include <gtest/gtest.h>

#include <random>

#include "cdsynth/error.hpp"
#include "cdsynth/onehot.hpp"
#include "cdsynth/serialize.hpp"
#include "cdsynth/synth_boolean.hpp"
#include "oracles/brute.hpp"

using namespace cdsynth;

namespace {

int error_line(std::string_view text) {
  try {
    deserialize(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string error_message(std::string_view text) {
  try {
    deserialize(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

const std::string kHeader = R"({"version":1,"registers":[{"name":"q","role":"input","start":0,"len":4}]})";

}  // namespace

TEST(Serialize, RoundTripIsBitwiseStable) {
  std::mt19937_64 rng(31);
  const auto f = oracle::random_unitary(2, rng);
  const std::vector<Circuit> circuits = {
      synth_qram_onehot(2, Backend::FanOut),
      synth_qram_onehot(2, Backend::GlobalTunable),
      synth_qrag_onehot(2, Backend::FanOut),
      synth_ucg_onehot(f, 0b11, Backend::GlobalTunable),
      synth_ucg_fourier(f, Backend::FanOut),
      synth_ucg_zero_one(f, Backend::GlobalTunable),
      expand_ands(synth_fin_f2(majority_function(3), Backend::FanOut), Backend::FanOut),
  };
  for (const auto& c : circuits) {
    const std::string text = serialize(c);
    const Circuit back = deserialize(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize(back), text);
    const auto a = resources(c);
    const auto b = resources(back);
    EXPECT_EQ(a.fanout_count, b.fanout_count);
    EXPECT_EQ(a.gt_count, b.gt_count);
    EXPECT_EQ(a.and_count, b.and_count);
    EXPECT_EQ(a.depth, b.depth);
    EXPECT_EQ(a.ancilla_count, b.ancilla_count);
  }
}

TEST(Serialize, EveryGateKindRoundTrips) {
  const Circuit c({Register{"q", Role::Input, 0, 4}},
                  {{gate::H{0}, gate::X{1}, gate::Phase{2, 0.25}, gate::GlobalPhase{-0.5}},
                   {gate::ControlledZ{{0, 1}, 2, 1.0}},
                   {gate::ControlledU{0, 1, Unitary2::hadamard()}},
                   {gate::FanOut{0, {1, 2, 3}}},
                   {gate::GlobalTunable(std::vector<gate::Coupling>{{0, 1, 0.5}, {2, 3, -0.125}})},
                   {gate::PrimitiveAnd{{0, 1, 2}, 3, 7}},
                   {gate::Swap{0, 1}, gate::Swap{2, 3}},
                   {gate::ControlledSwap{0, 1, 2}},
                   {gate::MultiControlledX{{0, 1, 2}, 3}}});
  const Circuit back = deserialize(serialize(c));
  EXPECT_EQ(back, c);
}

TEST(Deserialize, NormalizesAnglesAndMergesCouplings) {
  const std::string text = kHeader + "\n" + R"([{"g":"Z","q":0,"theta":2.5},{"g":"CZ","c":[1],"t":2,"theta":-1.0}])" +
                           "\n" + R"([{"g":"GT","triples":[[0,1,0.5],[1,0,0.75],[2,3,1.0],[3,2,1.0]]}])" + "\n";
  const Circuit c = deserialize(text);
  ASSERT_EQ(c.layers().size(), 2U);
  EXPECT_NEAR(std::get<gate::Phase>(c.layers()[0][0]).theta, 0.5, 1e-15);
  EXPECT_EQ(std::get<gate::ControlledZ>(c.layers()[0][1]).theta, 1.0);
  const auto& gt = std::get<gate::GlobalTunable>(c.layers()[1][0]);
  ASSERT_EQ(gt.couplings().size(), 1U);
  EXPECT_NEAR(gt.couplings()[0].theta, -0.75, 1e-15);
  EXPECT_EQ(deserialize(serialize(c)), c);
}

TEST(Deserialize, ErrorsNameLineAndCause) {
  EXPECT_EQ(error_line(""), 1);
  EXPECT_EQ(error_line("not json\n"), 1);
  EXPECT_EQ(error_line(R"({"version":9,"registers":[]})"), 1);
  EXPECT_EQ(error_line(R"({"version":1,"registers":[{"name":"q","role":"Wire","start":0,"len":1}]})"), 1);
  EXPECT_EQ(error_line(kHeader + "\n[{\"g\":\"H\",\"q\":0}]\n{\"g\":1}\n"), 3);

  const std::string unknown = kHeader + "\n[{\"g\":\"H\",\"q\":0},{\"g\":\"TOFFOLI\",\"c\":[0,1],\"t\":2}]\n";
  EXPECT_EQ(error_line(unknown), 2);
  EXPECT_NE(error_message(unknown).find("TOFFOLI"), std::string::npos);
  EXPECT_NE(error_message(unknown).find("gate 1"), std::string::npos);

  EXPECT_EQ(error_line(kHeader + "\n[{\"g\":\"Z\",\"q\":0}]\n"), 2);
  EXPECT_EQ(error_line(kHeader + "\n[{\"g\":\"CU\",\"c\":0,\"t\":1,\"u\":[1,0,0,0]}]\n"), 2);
  EXPECT_EQ(error_line(kHeader + "\n[{\"g\":\"GT\",\"triples\":[[0,1]]}]\n"), 2);
}

TEST(Deserialize, CrlfAndBlankLines) {
  const std::string text = kHeader + "\r\n\r\n[{\"g\":\"H\",\"q\":0}]\r\n";
  const Circuit c = deserialize(text);
  EXPECT_EQ(c.layers().size(), 1U);
  EXPECT_EQ(c.num_qubits(), 4);
}

#pragma once

// Small circuits and classical maps shared by the rewrite checks.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "cdsynth/circuit.hpp"
#include "cdsynth/simulator.hpp"
#include "oracles/dense.hpp"

namespace oracle {

using cdsynth::Circuit;
using cdsynth::CircuitBuilder;
using cdsynth::Complex;
using cdsynth::ExpectedMap;
using cdsynth::Layer;
using cdsynth::Qubit;
using cdsynth::Register;
using cdsynth::Role;
namespace gate = cdsynth::gate;

inline Circuit on_qubits(int n, std::vector<Layer> layers) {
  return Circuit({Register{"q", Role::Input, 0, n}}, std::move(layers));
}

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

inline int ceil_log(int k, int value) {
  int d = 0;
  for (long p = 1; p < value; p *= k) ++d;
  return d;
}

// Dense unitary of a classical permutation idx -> map(idx).
template <class Map>
std::vector<DenseState> permutation_unitary(int n, Map&& map) {
  std::vector<oracle::DenseState> cols;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) cols.push_back(basis(n, map(j)));
  return cols;
}

inline std::uint64_t apply_fanouts(std::uint64_t idx, std::span<const gate::FanOut> fanouts) {
  for (const auto& fo : fanouts) {
    if (!((idx >> fo.control) & 1U)) continue;
    for (Qubit t : fo.targets) idx ^= std::uint64_t{1} << t;
  }
  return idx;
}

// x (a qubits, MSB first) then the AND target.
inline Circuit and_circuit(int arity) {
  CircuitBuilder b;
  const Register x = b.add_register("x", Role::Input, std::max(arity, 1));
  const Register t = b.add_register("t", Role::Target, 1);
  std::vector<Qubit> inputs;
  for (int i = 0; i < arity; ++i) inputs.push_back(x[i]);
  b.add(Layer{gate::PrimitiveAnd{inputs, t[0], 0}});
  return b.build();
}

inline ExpectedMap and_map(int arity) {
  const int width = std::max(arity, 1) + 1;
  return {width, [arity, width](std::uint64_t i) -> std::vector<std::pair<std::uint64_t, Complex>> {
            const std::uint64_t inputs = i >> 1;
            const std::uint64_t all = arity == 0 ? inputs : (std::uint64_t{1} << (width - 1)) - 1;
            const bool fire = arity == 0 || (inputs & all) == all;
            return {{fire ? i ^ 1U : i, 1.0}};
          },
          false};
}

}  // namespace oracle

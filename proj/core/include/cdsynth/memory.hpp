#pragma once

// QRAM and QRAG built from each other.

#include "cdsynth/circuit.hpp"
#include "cdsynth/rewrites.hpp"

namespace cdsynth {

struct ComposedMemory {
  Circuit circuit;
  int oracle_calls = 0;
  int glue_two_qubit_gates = 0;
  int hadamards = 0;
  int workspace_qubits = 0;
};

// Two QRAG calls around a swap/CNOT/swap through one workspace qubit.
ComposedMemory compose_qram_from_qrag(int n, Backend backend);
// Three QRAM calls; the middle one is conjugated by H on the target and every memory cell.
ComposedMemory compose_qrag_from_qram(int n, Backend backend);

// Layers of `sub` with every qubit q replaced by map[q].
std::vector<Layer> remap_layers(std::span<const Layer> layers, std::span<const Qubit> map);

}  // namespace cdsynth

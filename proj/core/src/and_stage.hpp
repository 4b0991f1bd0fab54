#pragma once

#include <span>
#include <string>
#include <vector>

#include "cdsynth/circuit.hpp"
#include "cdsynth/rewrites.hpp"

namespace cdsynth::detail {

struct AndSpec {
  std::vector<Qubit> inputs;
  Qubit target;
};

// A parallel batch of ANDs onto fresh targets. Fan-Out backend: one layer of PrimitiveAnd.
// GT backend: two OR-reduction levels (one GT each) feeding a small PrimitiveAnd core, so the
// compute half holds exactly two GTs; `uncompute` is the exact inverse of `compute`.
struct AndStage {
  std::vector<Layer> compute;
  std::vector<Layer> uncompute;
};

AndStage and_stage(std::span<const AndSpec> ands, Backend backend, CircuitBuilder& builder,
                   const std::string& prefix);

// Sorted, duplicate-free union of layer qubits (empty spans allowed).
std::vector<Qubit> concat(std::initializer_list<std::span<const Qubit>> parts);

}  // namespace cdsynth::detail

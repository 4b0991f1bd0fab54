#include "and_stage.hpp"

#include <algorithm>

namespace cdsynth::detail {

std::vector<Qubit> concat(std::initializer_list<std::span<const Qubit>> parts) {
  std::vector<Qubit> out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AndStage and_stage(std::span<const AndSpec> ands, Backend backend, CircuitBuilder& builder,
                   const std::string& prefix) {
  AndStage stage;
  if (ands.empty()) return stage;

  if (backend == Backend::FanOut) {
    Layer layer;
    int tag = 0;
    for (const auto& a : ands) {
      if (a.inputs.empty()) {
        layer.push_back(gate::X{a.target});
      } else {
        layer.push_back(gate::PrimitiveAnd{a.inputs, a.target, tag++});
      }
    }
    stage.compute = {layer};
    stage.uncompute = {layer};
    return stage;
  }

  // Level 1 reduces the complemented inputs u into W1 (W1 = 0 iff AND(u)); level 2 reduces W1
  // into W2; the core AND fires on the complement of W2.
  std::vector<Qubit> level1_all;
  std::vector<Qubit> level2_all;
  std::vector<Qubit> inputs_all;
  gate::GlobalTunable level1;
  gate::GlobalTunable level2;
  Layer core;
  int tag = 0;
  for (const auto& a : ands) {
    if (a.inputs.empty()) {
      core.push_back(gate::X{a.target});
      continue;
    }
    const int p1 = or_reduction_width(static_cast<int>(a.inputs.size()));
    const int p2 = or_reduction_width(p1);
    const Register w1 = builder.add_register(prefix + "w1_" + std::to_string(tag), Role::Ancilla, p1);
    const Register w2 = builder.add_register(prefix + "w2_" + std::to_string(tag), Role::Ancilla, p2);
    for (int k = 0; k < p1; ++k) {
      for (Qubit u : a.inputs) level1.add(u, w1[k], or_reduction_angle(k));
    }
    for (int l = 0; l < p2; ++l) {
      for (int k = 0; k < p1; ++k) level2.add(w1[k], w2[l], or_reduction_angle(l));
    }
    const auto q1 = w1.qubits();
    const auto q2 = w2.qubits();
    level1_all.insert(level1_all.end(), q1.begin(), q1.end());
    level2_all.insert(level2_all.end(), q2.begin(), q2.end());
    inputs_all.insert(inputs_all.end(), a.inputs.begin(), a.inputs.end());
    core.push_back(gate::PrimitiveAnd{q2, a.target, tag++});
  }

  auto& c = stage.compute;
  if (!level1.empty()) {
    // Each reduction keeps its own H-GT-H window so simulators can treat it as one block.
    c.push_back(paulis(inputs_all));
    c.push_back(hadamards(level1_all));
    c.push_back(Layer{level1});
    c.push_back(hadamards(level1_all));
    c.push_back(hadamards(level2_all));
    c.push_back(Layer{level2});
    c.push_back(hadamards(level2_all));
    c.push_back(paulis(concat({inputs_all, level2_all})));
  }
  c.push_back(core);
  stage.uncompute = inverse(stage.compute);
  return stage;
}

}  // namespace cdsynth::detail

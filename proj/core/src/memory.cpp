#include "cdsynth/memory.hpp"

#include "cdsynth/error.hpp"
#include "cdsynth/onehot.hpp"

namespace cdsynth {
namespace {

Gate remap_gate(const Gate& g, std::span<const Qubit> map) {
  auto at = [&](Qubit q) { return map[static_cast<std::size_t>(q)]; };
  auto all = [&](const std::vector<Qubit>& qs) {
    std::vector<Qubit> out;
    out.reserve(qs.size());
    for (Qubit q : qs) out.push_back(at(q));
    return out;
  };
  return std::visit(
      [&](const auto& op) -> Gate {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, gate::H>) return gate::H{at(op.q)};
        else if constexpr (std::is_same_v<T, gate::X>) return gate::X{at(op.q)};
        else if constexpr (std::is_same_v<T, gate::Phase>) return gate::Phase{at(op.q), op.theta};
        else if constexpr (std::is_same_v<T, gate::GlobalPhase>) return op;
        else if constexpr (std::is_same_v<T, gate::ControlledZ>) return gate::ControlledZ{all(op.controls), at(op.target), op.theta};
        else if constexpr (std::is_same_v<T, gate::ControlledU>) return gate::ControlledU{at(op.control), at(op.target), op.u};
        else if constexpr (std::is_same_v<T, gate::FanOut>) return gate::FanOut{at(op.control), all(op.targets)};
        else if constexpr (std::is_same_v<T, gate::GlobalTunable>) {
          gate::GlobalTunable out;
          for (const auto& c : op.couplings()) out.add(at(c.control), at(c.target), c.theta);
          return out;
        } else if constexpr (std::is_same_v<T, gate::PrimitiveAnd>) return gate::PrimitiveAnd{all(op.inputs), at(op.target), op.tag};
        else if constexpr (std::is_same_v<T, gate::Swap>) return gate::Swap{at(op.a), at(op.b)};
        else if constexpr (std::is_same_v<T, gate::ControlledSwap>) return gate::ControlledSwap{at(op.control), at(op.a), at(op.b)};
        else return gate::MultiControlledX{all(op.controls), at(op.target)};
      },
      g);
}

// Memory registers shared with the oracle plus one private copy of its ancillae.
struct Host {
  CircuitBuilder builder;
  Register a, t, m;
  std::vector<Qubit> oracle_map;
};

Host host_for(const Circuit& oracle, int n, int workspace) {
  Host h;
  h.a = h.builder.add_register("a", Role::Address, log2_exact(n));
  h.t = h.builder.add_register("t", Role::Target, 1);
  h.m = h.builder.add_register("m", Role::Memory, n);
  if (workspace > 0) h.builder.add_register("tmp", Role::Ancilla, workspace);
  h.oracle_map.assign(static_cast<std::size_t>(oracle.num_qubits()), -1);
  for (const auto& r : oracle.registers()) {
    Register into;
    if (r.name == "a") into = h.a;
    else if (r.name == "t") into = h.t;
    else if (r.name == "m") into = h.m;
    else into = h.builder.add_register("oracle_" + r.name, r.role, r.length);
    for (int i = 0; i < r.length; ++i) h.oracle_map[static_cast<std::size_t>(r[i])] = into[i];
  }
  return h;
}

}  // namespace

std::vector<Layer> remap_layers(std::span<const Layer> layers, std::span<const Qubit> map) {
  std::vector<Layer> out;
  out.reserve(layers.size());
  for (const auto& layer : layers) {
    Layer mapped;
    mapped.reserve(layer.size());
    for (const auto& g : layer) mapped.push_back(remap_gate(g, map));
    out.push_back(std::move(mapped));
  }
  return out;
}

ComposedMemory compose_qram_from_qrag(int n, Backend backend) {
  const Circuit qrag = synth_qrag_onehot(n, backend);
  Host h = host_for(qrag, n, 1);
  const Qubit tmp = h.builder.build().find_register("tmp")->start;
  const auto call = remap_layers(qrag.layers(), h.oracle_map);
  const Qubit t = h.t[0];

  h.builder.add(Layer{gate::Swap{t, tmp}});
  h.builder.add(call);
  h.builder.add(Layer{gate::MultiControlledX{{t}, tmp}});
  h.builder.add(call);
  h.builder.add(Layer{gate::Swap{t, tmp}});
  return {h.builder.build(), 2, 3, 0, 1};
}

ComposedMemory compose_qrag_from_qram(int n, Backend backend) {
  const Circuit qram = synth_qram_onehot(n, backend);
  Host h = host_for(qram, n, 0);
  const auto call = remap_layers(qram.layers(), h.oracle_map);
  std::vector<Qubit> conjugated = h.m.qubits();
  conjugated.push_back(h.t[0]);
  const Layer basis_change = hadamards(conjugated);

  h.builder.add(call);
  h.builder.add(basis_change);
  h.builder.add(call);
  h.builder.add(basis_change);
  h.builder.add(call);
  return {h.builder.build(), 3, 0, 2 * static_cast<int>(conjugated.size()), 0};
}

}  // namespace cdsynth

#pragma once

// Gate-level rewrites between Fan-Out, PARITY, global tunable gates and AND.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cdsynth/circuit.hpp"

namespace cdsynth {

enum class Backend { FanOut, GlobalTunable };

const char* backend_name(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

// Runs each sequence in parallel; sequences must act on disjoint qubits.
std::vector<Layer> zip_layers(const std::vector<std::vector<Layer>>& sequences);

// H on every touched qubit, the Fan-Out, H again: a PARITY of the targets into the control.
std::vector<Layer> fanout_to_parity(const gate::FanOut& g);
// XOR of `inputs` into `target`, expressed through one Fan-Out.
std::vector<Layer> parity_layers(std::span<const Qubit> inputs, Qubit target);

// Copies `source` into every target using Fan-Outs of arity at most `max_arity`.
std::vector<Layer> fanout_cascade_layers(Qubit source, std::span<const Qubit> targets, int max_arity);
// Standalone cascade on registers "source" (1 qubit) and "copies" (n qubits).
Circuit fanout_cascade(int n, int max_arity);

// Commuting Fan-Outs as H layer, one global tunable gate, H layer. The middle layer is empty
// when every coupling cancels.
std::vector<Layer> fanouts_to_gt(std::span<const gate::FanOut> fanouts);

int or_reduction_width(int n);  // ceil(log2(n + 1))
double or_reduction_angle(int k);  // 2^-k

// |x>|0^p> -> |x>|psi_x> with <0^p|psi_x> = 1 iff x = 0. Fan-Out backend ancillae come from `pool`.
std::vector<Layer> or_reduction(std::span<const Qubit> inputs, std::span<const Qubit> out, Backend backend,
                                AncillaPool& pool);

// Exact expansion of an AND into OR reductions down to a Toffoli or CNOT.
std::vector<Layer> expand_and(const gate::PrimitiveAnd& g, Backend backend, AncillaPool& pool);

// Expands every PrimitiveAnd in place; parallel ANDs stay parallel and share reusable ancillae.
Circuit expand_ands(const Circuit& c, Backend backend);

}  // namespace cdsynth

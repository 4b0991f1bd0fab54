#pragma once

#include <map>
#include <span>
#include <vector>

#include "cdsynth/boolean.hpp"
#include "cdsynth/circuit.hpp"

namespace cdsynth::detail {

// Dedicated copies of each variable of every multi-variable term.
struct TermCopies {
  std::vector<gate::FanOut> fanouts;  // one per copied variable
  std::map<Mask, std::vector<Qubit>> slots;
};

// `vars[i]` is the qubit holding variable i; terms must all have size >= 2.
TermCopies allocate_copies(CircuitBuilder& b, int n, std::span<const Qubit> vars, std::span<const Mask> terms);

// Fan-Outs from each variable into the target of every term containing it.
std::vector<gate::FanOut> term_fanouts(int n, std::span<const Qubit> vars, std::span<const Mask> terms,
                                       const std::map<Mask, Qubit>& target_of);

std::map<Mask, int> index_terms(std::span<const Mask> terms);

}  // namespace cdsynth::detail

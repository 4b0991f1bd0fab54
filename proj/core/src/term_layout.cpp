#include "term_layout.hpp"

namespace cdsynth::detail {

TermCopies allocate_copies(CircuitBuilder& b, int n, std::span<const Qubit> vars, std::span<const Mask> terms) {
  TermCopies out;
  int total = 0;
  for (Mask s : terms) total += mask_size(s);
  if (total == 0) return out;
  const Register r = b.add_register("copies", Role::Ancilla, total);
  std::vector<std::vector<Qubit>> targets(n);
  int next = 0;
  for (Mask s : terms) {
    auto& slot = out.slots[s];
    for (int i : mask_variables(n, s)) {
      slot.push_back(r[next]);
      targets[i].push_back(r[next]);
      ++next;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!targets[i].empty()) out.fanouts.push_back(gate::FanOut{vars[i], targets[i]});
  }
  return out;
}

std::vector<gate::FanOut> term_fanouts(int n, std::span<const Qubit> vars, std::span<const Mask> terms,
                                       const std::map<Mask, Qubit>& target_of) {
  std::vector<std::vector<Qubit>> targets(n);
  for (Mask s : terms) {
    for (int i : mask_variables(n, s)) targets[i].push_back(target_of.at(s));
  }
  std::vector<gate::FanOut> out;
  for (int i = 0; i < n; ++i) {
    if (!targets[i].empty()) out.push_back(gate::FanOut{vars[i], targets[i]});
  }
  return out;
}

std::map<Mask, int> index_terms(std::span<const Mask> terms) {
  std::map<Mask, int> out;
  for (std::size_t k = 0; k < terms.size(); ++k) out[terms[k]] = static_cast<int>(k);
  return out;
}

}  // namespace cdsynth::detail

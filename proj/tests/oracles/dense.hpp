#pragma once

// Dense reference simulator, independent of the sparse one: gates are applied one at a time
// to a full 2^N amplitude vector (qubit q = bit q of the index).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cdsynth/circuit.hpp"

namespace oracle {

using cdsynth::Circuit;
using cdsynth::Complex;
using cdsynth::Gate;
using cdsynth::Qubit;
namespace gate = cdsynth::gate;

using DenseState = std::vector<Complex>;

inline bool bit(std::uint64_t idx, Qubit q) { return (idx >> q) & 1U; }
inline Complex phase(double theta) { return std::polar(1.0, std::numbers::pi * theta); }

inline bool all_set(std::uint64_t idx, const std::vector<Qubit>& qs) {
  for (Qubit q : qs) {
    if (!bit(idx, q)) return false;
  }
  return true;
}

// Applies an index permutation new[idx'] = old[idx].
template <class Map>
void permute(DenseState& s, Map&& map) {
  DenseState out(s.size());
  for (std::uint64_t i = 0; i < s.size(); ++i) out[map(i)] += s[i];
  s = std::move(out);
}

inline void apply_gate(DenseState& s, const Gate& g) {
  const std::uint64_t dim = s.size();
  if (auto* h = std::get_if<gate::H>(&g)) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::uint64_t m = std::uint64_t{1} << h->q;
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & m) continue;
      const Complex a = s[i], b = s[i | m];
      s[i] = r * (a + b);
      s[i | m] = r * (a - b);
    }
  } else if (auto* x = std::get_if<gate::X>(&g)) {
    permute(s, [&](std::uint64_t i) { return i ^ (std::uint64_t{1} << x->q); });
  } else if (auto* p = std::get_if<gate::Phase>(&g)) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (bit(i, p->q)) s[i] *= phase(p->theta);
    }
  } else if (auto* gp = std::get_if<gate::GlobalPhase>(&g)) {
    for (auto& a : s) a *= phase(gp->theta);
  } else if (auto* cz = std::get_if<gate::ControlledZ>(&g)) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (all_set(i, cz->controls) && bit(i, cz->target)) s[i] *= phase(cz->theta);
    }
  } else if (auto* cu = std::get_if<gate::ControlledU>(&g)) {
    const std::uint64_t m = std::uint64_t{1} << cu->target;
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & m) || !bit(i, cu->control)) continue;
      const Complex a = s[i], b = s[i | m];
      s[i] = cu->u(0, 0) * a + cu->u(0, 1) * b;
      s[i | m] = cu->u(1, 0) * a + cu->u(1, 1) * b;
    }
  } else if (auto* fo = std::get_if<gate::FanOut>(&g)) {
    std::uint64_t mask = 0;
    for (Qubit t : fo->targets) mask |= std::uint64_t{1} << t;
    permute(s, [&](std::uint64_t i) { return bit(i, fo->control) ? i ^ mask : i; });
  } else if (auto* gt = std::get_if<gate::GlobalTunable>(&g)) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      for (const auto& c : gt->couplings()) {
        if (bit(i, c.control) && bit(i, c.target)) s[i] *= phase(c.theta);
      }
    }
  } else if (auto* a = std::get_if<gate::PrimitiveAnd>(&g)) {
    permute(s, [&](std::uint64_t i) { return all_set(i, a->inputs) ? i ^ (std::uint64_t{1} << a->target) : i; });
  } else if (auto* sw = std::get_if<gate::Swap>(&g)) {
    permute(s, [&](std::uint64_t i) {
      if (bit(i, sw->a) == bit(i, sw->b)) return i;
      return i ^ (std::uint64_t{1} << sw->a) ^ (std::uint64_t{1} << sw->b);
    });
  } else if (auto* cs = std::get_if<gate::ControlledSwap>(&g)) {
    permute(s, [&](std::uint64_t i) {
      if (!bit(i, cs->control) || bit(i, cs->a) == bit(i, cs->b)) return i;
      return i ^ (std::uint64_t{1} << cs->a) ^ (std::uint64_t{1} << cs->b);
    });
  } else if (auto* mcx = std::get_if<gate::MultiControlledX>(&g)) {
    permute(s, [&](std::uint64_t i) {
      return all_set(i, mcx->controls) ? i ^ (std::uint64_t{1} << mcx->target) : i;
    });
  } else {
    throw std::logic_error("dense oracle: unhandled gate");
  }
}

inline DenseState run(const Circuit& c, DenseState s) {
  if (s.size() != (std::uint64_t{1} << c.num_qubits())) throw std::invalid_argument("dense oracle: size mismatch");
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) apply_gate(s, g);
  }
  return s;
}

inline DenseState basis(int num_qubits, std::uint64_t idx) {
  DenseState s(std::uint64_t{1} << num_qubits);
  s[idx] = 1.0;
  return s;
}

// Column-major full unitary, column j = U|j>.
inline std::vector<DenseState> unitary(const Circuit& c) {
  std::vector<DenseState> cols;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << c.num_qubits()); ++j) cols.push_back(run(c, basis(c.num_qubits(), j)));
  return cols;
}

inline double max_distance(const std::vector<DenseState>& a, const std::vector<DenseState>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t i = 0; i < a[j].size(); ++i) d = std::max(d, std::abs(a[j][i] - b[j][i]));
  }
  return d;
}

}  // namespace oracle

#pragma once

#include <map>
#include <vector>

#include "cdsynth/synth_boolean.hpp"

namespace cdsynth::detail {

// Qubits whose value is the basis monomial of each nonconstant term, with the layers that
// prepare them (copy is self-inverse and brackets compute/uncompute).
struct TermControls {
  std::map<Mask, Qubit> control;
  std::vector<Layer> copy;
  std::vector<Layer> compute;
  std::vector<Layer> uncompute;
};

// A component nu contributes Z(nu(0-monomials)) on the target and, per term S, a phase
// weight * c_S on the target controlled by the monomial of S.
struct MonomialEncoding {
  double weight;
  bool constant_is_sum;  // Fourier: value at the zero monomials is the coefficient sum
};

void ucg_phase_body(CircuitBuilder& b, Qubit t, const ComponentPolys& polys, const TermSupport& s,
                    const TermControls& controls, MonomialEncoding encoding, Backend backend);

}  // namespace cdsynth::detail

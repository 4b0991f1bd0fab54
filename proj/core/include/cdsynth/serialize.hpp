#pragma once

// Line-oriented circuit files: a JSON header object, then one JSON array of gates per layer.
// Angles are reduced into (-1, 1] on load; GT couplings on the same pair are merged.

#include <string>
#include <string_view>

#include "cdsynth/circuit.hpp"

namespace cdsynth {

inline constexpr int kCircuitFormatVersion = 1;

std::string serialize(const Circuit& c);
// Throws ParseError naming the line and gate index of the first problem.
Circuit deserialize(std::string_view text);

}  // namespace cdsynth

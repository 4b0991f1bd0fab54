#pragma once

#include <optional>
#include <string>

namespace cdsynth {

// Closed-form counts a construction promises; unset fields carry no exact formula.
struct Prediction {
  std::optional<int> fanouts;
  std::optional<int> gts;
  std::optional<int> ancillae;
  std::string formula;  // human-readable source of the numbers
};

}  // namespace cdsynth

#pragma once

// One-hot-encoding constructions for UCG, FIN, QRAM and QRAG.
//
// UCG and FIN circuits use registers "x" (Input, n) and "t" (Target, 1); QRAM and QRAG use
// "a" (Address, log n), "t" (Target, 1) and "m" (Memory, n). Ancilla registers follow.

#include <vector>

#include "cdsynth/boolean.hpp"
#include "cdsynth/circuit.hpp"
#include "cdsynth/prediction.hpp"
#include "cdsynth/rewrites.hpp"
#include "cdsynth/unitary.hpp"

namespace cdsynth {

inline constexpr int kOneHotCap = 12;  // t + r

struct OneHotBlock {
  Mask z = 0;  // fixing of the variables outside J (MSB = first such variable)
  Mask j = 0;  // value of the relevant J-variables of that fixing (MSB = smallest variable)
  std::vector<int> j_variables;
  Mask representative = 0;  // an input x with x_Jbar = z and x_{J_z} = j, other bits 0
};

struct OneHotPlan {
  JuntaStructure junta;
  std::vector<OneHotBlock> blocks;  // lexicographic in (z, j)
  int m = 0;
  std::vector<int> copies;  // m_i for every variable (0 outside J)
};

// Throws if t + r exceeds kOneHotCap.
OneHotPlan plan_onehot(const JuntaStructure& junta);
// Keeps only the blocks on which f is 1.
OneHotPlan plan_fin_onehot(const BooleanFunction& f, Mask J);

// Exhaustive choice minimizing (m, t, J) for n <= 10; all variables otherwise.
Mask choose_junta_set(const UnitaryFunction& f);
Mask choose_junta_set(const BooleanFunction& f);

Circuit synth_ucg_onehot(const UnitaryFunction& f, Mask J, Backend backend);
Circuit synth_fin_onehot(const BooleanFunction& f, Mask J, Backend backend);
Circuit synth_qram_onehot(int n, Backend backend);
Circuit synth_qrag_onehot(int n, Backend backend);

Prediction predict_ucg_onehot(const OneHotPlan& plan, Backend backend);
Prediction predict_fin_onehot(const OneHotPlan& plan, Backend backend);
Prediction predict_qram_onehot(int n, Backend backend);
Prediction predict_qrag_onehot(int n, Backend backend);

}  // namespace cdsynth

#pragma once

// Constructions driven by polynomial representations: Fourier (exact and approximate),
// real {0,1} and F2 (algebraic normal form). Register layout as in onehot.hpp.

#include <array>
#include <cstdint>
#include <span>

#include "cdsynth/boolean.hpp"
#include "cdsynth/circuit.hpp"
#include "cdsynth/prediction.hpp"
#include "cdsynth/rewrites.hpp"
#include "cdsynth/unitary.hpp"

namespace cdsynth {

inline constexpr int kMaxTerms = 1 << 12;

// Polynomials of alpha, beta, gamma, delta (in that order).
using ComponentPolys = std::array<SparsePolynomial, 4>;

ComponentPolys fourier_components(const UnitaryFunction& f);
ComponentPolys zero_one_components(const UnitaryFunction& f);
// Low-degree part kept exactly, the rest replaced by approx_sparse with per-component error eps_prime.
ComponentPolys approx_fourier_components(const UnitaryFunction& f, double eps_prime, std::uint64_t seed);

// Support bookkeeping shared by the formulas: union of the nonempty terms of all polynomials.
struct TermSupport {
  std::vector<Mask> above0;  // |S| > 0, sorted
  std::vector<Mask> above1;  // |S| > 1, sorted
  int union_above1 = 0;      // |union of S over above1|
  int size_sum = 0;          // sum of |S| over above0
};
TermSupport term_support(std::span<const SparsePolynomial> polys);

// Tolerance handed to approx_sparse by the approximate constructions.
double ucg_component_tolerance(double eps);
double fin_component_tolerance(double eps);

Circuit synth_ucg_fourier(const UnitaryFunction& f, Backend backend);
Circuit synth_ucg_fourier_approx(const UnitaryFunction& f, double eps, Backend backend, std::uint64_t seed = 1);
Circuit synth_ucg_zero_one(const UnitaryFunction& f, Backend backend);
// Builds directly from given component polynomials (used by the approximate variant).
Circuit synth_ucg_from_fourier(const ComponentPolys& polys, Backend backend);

Circuit synth_fin_fourier(const BooleanFunction& f, Backend backend);
Circuit synth_fin_fourier_approx(const BooleanFunction& f, double eps, Backend backend, std::uint64_t seed = 1);
Circuit synth_fin_f2(const BooleanFunction& f, Backend backend);

// Closed-form Fourier expansion of the selection function over (x_0..x_{n-1}, i_0..i_{log n - 1}).
SparsePolynomial qram_fourier_coefficients(int n);
Circuit synth_qram_fourier(int n, Backend backend);

Prediction predict_ucg_fourier(const TermSupport& s, Backend backend);
Prediction predict_fin_fourier(const TermSupport& s, Backend backend);
Prediction predict_ucg_zero_one(const TermSupport& s, Backend backend);
Prediction predict_fin_f2(const TermSupport& s, Backend backend);

}  // namespace cdsynth

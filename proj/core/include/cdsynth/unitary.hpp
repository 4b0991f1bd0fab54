#pragma once

// Single-qubit unitaries and the Z-decomposition
//   U = e^{i pi alpha} Z(beta) H Z(gamma) H Z(delta),  Z(theta) = diag(1, e^{i pi theta}).
// All angles are in units of pi.

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "cdsynth/boolean.hpp"

namespace cdsynth {

using Complex = std::complex<double>;

inline constexpr double kUnitarityTolerance = 1e-9;
inline constexpr double kRecompositionTolerance = 1e-10;

// Reduces an angle (units of pi) modulo 2 into (-1, 1].
double reduce_angle(double theta);

class Unitary2 {
 public:
  // Row-major entries; throws unless unitary within kUnitarityTolerance.
  explicit Unitary2(const std::array<Complex, 4>& entries);

  static Unitary2 identity();
  static Unitary2 pauli_x();
  static Unitary2 hadamard();
  static Unitary2 phase(double theta);

  Complex operator()(int row, int col) const { return m_[2 * row + col]; }
  const std::array<Complex, 4>& entries() const noexcept { return m_; }

  Unitary2 adjoint() const;
  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);
  friend bool operator==(const Unitary2&, const Unitary2&) = default;

 private:
  struct Unchecked {};
  Unitary2(const std::array<Complex, 4>& entries, Unchecked) : m_(entries) {}

  std::array<Complex, 4> m_;
};

struct ZDecomp {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

ZDecomp z_decompose(const Unitary2& u);
Unitary2 z_recompose(const ZDecomp& d);

double spectral_distance(const Unitary2& u, const Unitary2& v);

class UnitaryFunction {
 public:
  UnitaryFunction(int n, std::vector<Unitary2> table);
  // The lift x -> X^{f(x)}.
  static UnitaryFunction from_boolean(const BooleanFunction& f);

  int arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  const Unitary2& operator()(Mask x) const { return table_.at(x); }

 private:
  int n_;
  std::vector<Unitary2> table_;
};

struct ZTables {
  RealFunction alpha;
  RealFunction beta;
  RealFunction gamma;
  RealFunction delta;

  const RealFunction& component(int index) const;  // 0..3 = alpha..delta
};

ZTables decompose_function(const UnitaryFunction& f);

// Junta structure where two inputs agree iff their unitaries match entrywise within 1e-12.
JuntaStructure junta_structure(const UnitaryFunction& f, Mask J);

// Accepts eight reals per line (re/im of the row-major entries) or four reals per line (a ZDecomp).
UnitaryFunction parse_unitary_function(std::string_view text);

}  // namespace cdsynth

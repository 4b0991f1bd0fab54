#pragma once

// Sparse statevector simulation and verification drivers.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cdsynth/circuit.hpp"

namespace cdsynth {

inline constexpr int kMaxSimulatedQubits = 256;
inline constexpr double kPruneCutoff = 1e-12;
inline constexpr double kNormTolerance = 1e-9;

// Qubit q is bit (q % 64) of word (q / 64).
using BasisKey = std::array<std::uint64_t, 4>;

inline bool key_bit(const BasisKey& k, Qubit q) { return (k[q >> 6] >> (q & 63)) & 1U; }
inline void flip_bit(BasisKey& k, Qubit q) { k[q >> 6] ^= std::uint64_t{1} << (q & 63); }
inline void set_bit(BasisKey& k, Qubit q, bool v) {
  if (key_bit(k, q) != v) flip_bit(k, q);
}

struct Amplitude {
  BasisKey key;
  Complex value;
};

class SparseState {
 public:
  explicit SparseState(int num_qubits);  // |0...0>
  SparseState(int num_qubits, std::vector<Amplitude> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t support() const noexcept { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }
  // Entries ordered by qubit 0 first, then qubit 1, ...
  std::vector<Amplitude> sorted() const;
  Complex amplitude(const BasisKey& key) const;
  double norm_squared() const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

struct SimulationOptions {
  // Applies H-X-H style windows as one block (fewer transient branches).
  bool fuse = true;
  // Stop after this many layers (0 keeps the input state).
  std::optional<int> stop_after = std::nullopt;
};

struct SimulationResult {
  SparseState state;
  std::vector<std::size_t> support_after_layer;  // one entry per executed layer
};

// Throws on qubit-count mismatch or if normalization drifts by more than kNormTolerance.
SimulationResult simulate(const Circuit& c, SparseState input, const SimulationOptions& options = {});
SparseState apply(const Circuit& c, SparseState input);

// Basis states of the logical (non-ancilla) qubits, with logical bit 0 as the most significant
// index bit and ancillae at |0>.
BasisKey logical_basis_key(const Circuit& c, std::uint64_t logical_index);
int logical_width(const Circuit& c);

// Expected action on the logical register: image(i) lists (index, amplitude) of U|i>.
struct ExpectedMap {
  int width = 0;
  std::function<std::vector<std::pair<std::uint64_t, Complex>>(std::uint64_t)> image;
  // Basis permutations are compared up to one global phase; unitary references use exact phases.
  bool up_to_global_phase = true;
};

std::array<Complex, 2> reference_ucg(const UnitaryFunction& f, Mask x, std::array<Complex, 2> target);

// Layout: inputs (n) then target, as emitted by the FIN and UCG synthesizers.
ExpectedMap expected_fin(const BooleanFunction& f);
ExpectedMap expected_ucg(const UnitaryFunction& f);
// Layout: address (log n), target, memory (n).
ExpectedMap expected_qram(int n);
ExpectedMap expected_qrag(int n);

enum class VerifyMode { BasisSweep, RandomSuperpositions };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::BasisSweep;
  std::uint64_t seed = 1;
  int count = 64;
};

struct VerifyReport {
  double max_deviation = 0.0;
  double max_ancilla_mass = 0.0;
  bool ancillae_clean = true;
  std::size_t inputs = 0;
  std::size_t max_support = 0;

  bool passed(double tolerance) const { return ancillae_clean && max_deviation <= tolerance; }
};

VerifyReport verify_map(const Circuit& c, const ExpectedMap& expected, const VerifyOptions& options = {});

// The 2x2 block implemented on the target for each input x, measured by simulation.
struct MeasuredUcg {
  std::vector<std::array<Complex, 4>> blocks;  // row-major, indexed by x
  double max_leakage = 0.0;                    // amplitude mass outside the block or on ancillae
};

MeasuredUcg measure_ucg(const Circuit& c);
double max_spectral_deviation(const MeasuredUcg& measured, const UnitaryFunction& f);

}  // namespace cdsynth

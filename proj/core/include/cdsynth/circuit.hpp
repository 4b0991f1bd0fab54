#pragma once

// Layered circuits over role-tagged registers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cdsynth/unitary.hpp"

namespace cdsynth {

using Qubit = int;

enum class Role { Input, Address, Target, Memory, Ancilla };

const char* role_name(Role role);
std::optional<Role> parse_role(std::string_view name);

struct Register {
  std::string name;
  Role role;
  int start = 0;
  int length = 0;

  Qubit operator[](int i) const { return start + i; }
  std::vector<Qubit> qubits() const;
  bool contains(Qubit q) const { return q >= start && q < start + length; }
  friend bool operator==(const Register&, const Register&) = default;
};

namespace gate {

struct H {
  Qubit q;
  friend bool operator==(const H&, const H&) = default;
};
struct X {
  Qubit q;
  friend bool operator==(const X&, const X&) = default;
};
// Z(theta) = diag(1, e^{i pi theta}).
struct Phase {
  Qubit q;
  double theta;
  friend bool operator==(const Phase&, const Phase&) = default;
};
struct GlobalPhase {
  double theta;
  friend bool operator==(const GlobalPhase&, const GlobalPhase&) = default;
};
// Z(theta) on `target` when every control is 1.
struct ControlledZ {
  std::vector<Qubit> controls;
  Qubit target;
  double theta;
  friend bool operator==(const ControlledZ&, const ControlledZ&) = default;
};
struct ControlledU {
  Qubit control;
  Qubit target;
  Unitary2 u;
  friend bool operator==(const ControlledU&, const ControlledU&) = default;
};
// XORs the control bit into every target.
struct FanOut {
  Qubit control;
  std::vector<Qubit> targets;
  friend bool operator==(const FanOut&, const FanOut&) = default;
};

struct Coupling {
  Qubit control;
  Qubit target;
  double theta;
  friend bool operator==(const Coupling&, const Coupling&) = default;
};

// Product of commuting controlled-Z(theta) couplings, one per unordered qubit pair.
class GlobalTunable {
 public:
  GlobalTunable() = default;
  explicit GlobalTunable(std::span<const Coupling> couplings);

  // Adds theta to the pair's angle modulo 2; a pair whose angle becomes 0 is removed.
  void add(Qubit control, Qubit target, double theta);
  const std::vector<Coupling>& couplings() const noexcept { return couplings_; }
  bool empty() const noexcept { return couplings_.empty(); }
  friend bool operator==(const GlobalTunable&, const GlobalTunable&) = default;

 private:
  std::vector<Coupling> couplings_;
};

// X on `target` when every input is 1. `tag` pairs compute and uncompute instances.
struct PrimitiveAnd {
  std::vector<Qubit> inputs;
  Qubit target;
  int tag = -1;
  friend bool operator==(const PrimitiveAnd&, const PrimitiveAnd&) = default;
};
struct Swap {
  Qubit a;
  Qubit b;
  friend bool operator==(const Swap&, const Swap&) = default;
};
struct ControlledSwap {
  Qubit control;
  Qubit a;
  Qubit b;
  friend bool operator==(const ControlledSwap&, const ControlledSwap&) = default;
};
struct MultiControlledX {
  std::vector<Qubit> controls;
  Qubit target;
  friend bool operator==(const MultiControlledX&, const MultiControlledX&) = default;
};

}  // namespace gate

using Gate = std::variant<gate::H, gate::X, gate::Phase, gate::GlobalPhase, gate::ControlledZ, gate::ControlledU,
                          gate::FanOut, gate::GlobalTunable, gate::PrimitiveAnd, gate::Swap, gate::ControlledSwap,
                          gate::MultiControlledX>;
using Layer = std::vector<Gate>;

std::vector<Qubit> gate_qubits(const Gate& g);
bool is_diagonal(const Gate& g);
Gate inverse(const Gate& g);
std::vector<Layer> inverse(std::span<const Layer> layers);

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::vector<Register> registers, std::vector<Layer> layers);

  const std::vector<Register>& registers() const noexcept { return registers_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  int num_qubits() const noexcept { return num_qubits_; }
  const Register* find_register(std::string_view name) const;
  // Qubits of every non-Ancilla register, in increasing index order.
  std::vector<Qubit> logical_qubits() const;
  std::vector<bool> ancilla_mask() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::vector<Register> registers_;
  std::vector<Layer> layers_;
  int num_qubits_ = 0;
};

struct Violation {
  int layer;  // -1 for register-level problems
  std::string message;
};

std::vector<Violation> validate(const Circuit& c);

struct ResourceReport {
  int depth = 0;
  int fanout_count = 0;
  int gt_count = 0;
  int and_count = 0;
  int max_fanout_arity = 0;
  int max_gt_arity = 0;
  int max_and_arity = 0;
  int ancilla_count = 0;
  int single_and_two_qubit_count = 0;
  int other_gate_count = 0;  // constant-arity gates on three or more qubits
  int total_qubits = 0;
};

// Throws if the circuit is invalid.
ResourceReport resources(const Circuit& c);

// Leading-order overheads of expanding every PrimitiveAnd with the literature constructions
// (exact threshold: 6a Fan-Outs and 2a*ceil(log2 a) ancillae; global tunable: 4 GTs and 2a ancillae).
struct AndCostEstimate {
  long fanout_gates = 0;
  long fanout_ancillae = 0;
  long gt_gates = 0;
  long gt_ancillae = 0;
};
AndCostEstimate estimate_and_cost(const Circuit& c);

// Sequential construction with contiguous register allocation.
class CircuitBuilder {
 public:
  CircuitBuilder() = default;
  // Starts from the registers of `base` (layers are not copied).
  explicit CircuitBuilder(const Circuit& base);

  Register add_register(std::string name, Role role, int length);
  void add(Layer layer);  // skips empty layers
  void add(std::span<const Layer> layers);
  int num_qubits() const noexcept { return next_; }
  Circuit build() const;

 private:
  std::vector<Register> registers_;
  std::vector<Layer> layers_;
  int next_ = 0;
};

// Hands out ancilla qubits from on-demand registers; `reset` makes every qubit reusable.
class AncillaPool {
 public:
  AncillaPool(CircuitBuilder& builder, std::string prefix);
  std::vector<Qubit> acquire(int count);
  void reset();

 private:
  CircuitBuilder* builder_;
  std::string prefix_;
  std::vector<Qubit> all_;
  std::size_t used_ = 0;
  int chunks_ = 0;
};

// Convenience constructors.
Layer hadamards(std::span<const Qubit> qubits);
Layer paulis(std::span<const Qubit> qubits);

}  // namespace cdsynth

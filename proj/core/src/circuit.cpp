#include "cdsynth/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cdsynth/error.hpp"

namespace cdsynth {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kZeroAngle = 1e-12;

bool angle_in_range(double theta) { return theta > -1.0 && theta <= 1.0; }

int ceil_log2(int a) {
  int p = 0;
  while ((1 << p) < a) ++p;
  return p;
}

}  // namespace

const char* role_name(Role role) {
  switch (role) {
    case Role::Input:
      return "input";
    case Role::Address:
      return "address";
    case Role::Target:
      return "target";
    case Role::Memory:
      return "memory";
    case Role::Ancilla:
      return "ancilla";
  }
  return "?";
}

std::optional<Role> parse_role(std::string_view name) {
  for (Role r : {Role::Input, Role::Address, Role::Target, Role::Memory, Role::Ancilla}) {
    if (name == role_name(r)) return r;
  }
  return std::nullopt;
}

std::vector<Qubit> Register::qubits() const {
  std::vector<Qubit> q(length);
  for (int i = 0; i < length; ++i) q[i] = start + i;
  return q;
}

namespace gate {

GlobalTunable::GlobalTunable(std::span<const Coupling> couplings) {
  for (const auto& c : couplings) add(c.control, c.target, c.theta);
}

void GlobalTunable::add(Qubit control, Qubit target, double theta) {
  if (control == target) throw Error("global tunable coupling needs two distinct qubits");
  auto it = std::find_if(couplings_.begin(), couplings_.end(), [&](const Coupling& c) {
    return (c.control == control && c.target == target) || (c.control == target && c.target == control);
  });
  if (it != couplings_.end()) {
    const double sum = reduce_angle(it->theta + theta);
    if (std::fabs(sum) < kZeroAngle) {
      couplings_.erase(it);
    } else {
      it->theta = sum;
    }
    return;
  }
  const double reduced = reduce_angle(theta);
  if (std::fabs(reduced) >= kZeroAngle) couplings_.push_back({control, target, reduced});
}

}  // namespace gate

std::vector<Qubit> gate_qubits(const Gate& g) {
  return std::visit(
      Overloaded{
          [](const gate::H& h) { return std::vector<Qubit>{h.q}; },
          [](const gate::X& x) { return std::vector<Qubit>{x.q}; },
          [](const gate::Phase& p) { return std::vector<Qubit>{p.q}; },
          [](const gate::GlobalPhase&) { return std::vector<Qubit>{}; },
          [](const gate::ControlledZ& z) {
            auto q = z.controls;
            q.push_back(z.target);
            return q;
          },
          [](const gate::ControlledU& u) { return std::vector<Qubit>{u.control, u.target}; },
          [](const gate::FanOut& f) {
            std::vector<Qubit> q{f.control};
            q.insert(q.end(), f.targets.begin(), f.targets.end());
            return q;
          },
          [](const gate::GlobalTunable& t) {
            std::vector<Qubit> q;
            for (const auto& c : t.couplings()) {
              for (Qubit v : {c.control, c.target}) {
                if (std::find(q.begin(), q.end(), v) == q.end()) q.push_back(v);
              }
            }
            return q;
          },
          [](const gate::PrimitiveAnd& a) {
            auto q = a.inputs;
            q.push_back(a.target);
            return q;
          },
          [](const gate::Swap& s) { return std::vector<Qubit>{s.a, s.b}; },
          [](const gate::ControlledSwap& s) { return std::vector<Qubit>{s.control, s.a, s.b}; },
          [](const gate::MultiControlledX& x) {
            auto q = x.controls;
            q.push_back(x.target);
            return q;
          },
      },
      g);
}

bool is_diagonal(const Gate& g) {
  return std::holds_alternative<gate::Phase>(g) || std::holds_alternative<gate::GlobalPhase>(g) ||
         std::holds_alternative<gate::ControlledZ>(g) || std::holds_alternative<gate::GlobalTunable>(g);
}

Gate inverse(const Gate& g) {
  return std::visit(Overloaded{
                        [](const gate::Phase& p) -> Gate { return gate::Phase{p.q, reduce_angle(-p.theta)}; },
                        [](const gate::GlobalPhase& p) -> Gate { return gate::GlobalPhase{reduce_angle(-p.theta)}; },
                        [](const gate::ControlledZ& z) -> Gate {
                          return gate::ControlledZ{z.controls, z.target, reduce_angle(-z.theta)};
                        },
                        [](const gate::ControlledU& u) -> Gate {
                          return gate::ControlledU{u.control, u.target, u.u.adjoint()};
                        },
                        [](const gate::GlobalTunable& t) -> Gate {
                          gate::GlobalTunable inv;
                          for (const auto& c : t.couplings()) inv.add(c.control, c.target, -c.theta);
                          return inv;
                        },
                        [](const auto& self_inverse) -> Gate { return self_inverse; },
                    },
                    g);
}

std::vector<Layer> inverse(std::span<const Layer> layers) {
  std::vector<Layer> out;
  out.reserve(layers.size());
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    Layer inv;
    inv.reserve(it->size());
    for (const auto& g : *it) inv.push_back(inverse(g));
    out.push_back(std::move(inv));
  }
  return out;
}

Circuit::Circuit(std::vector<Register> registers, std::vector<Layer> layers)
    : registers_(std::move(registers)), layers_(std::move(layers)) {
  for (const auto& r : registers_) num_qubits_ = std::max(num_qubits_, r.start + r.length);
}

const Register* Circuit::find_register(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::vector<Qubit> Circuit::logical_qubits() const {
  std::vector<Qubit> q;
  for (const auto& r : registers_) {
    if (r.role != Role::Ancilla) {
      auto part = r.qubits();
      q.insert(q.end(), part.begin(), part.end());
    }
  }
  std::sort(q.begin(), q.end());
  return q;
}

std::vector<bool> Circuit::ancilla_mask() const {
  std::vector<bool> mask(num_qubits_, false);
  for (const auto& r : registers_) {
    if (r.role == Role::Ancilla) {
      for (int i = 0; i < r.length; ++i) mask[r.start + i] = true;
    }
  }
  return mask;
}

std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  const auto& regs = c.registers();
  for (std::size_t a = 0; a < regs.size(); ++a) {
    if (regs[a].length < 1 || regs[a].start < 0) out.push_back({-1, "register '" + regs[a].name + "' has an empty or negative range"});
    for (std::size_t b = a + 1; b < regs.size(); ++b) {
      const bool disjoint = regs[a].start + regs[a].length <= regs[b].start || regs[b].start + regs[b].length <= regs[a].start;
      if (!disjoint) out.push_back({-1, "registers '" + regs[a].name + "' and '" + regs[b].name + "' overlap"});
      if (regs[a].name == regs[b].name) out.push_back({-1, "duplicate register name '" + regs[a].name + "'"});
    }
  }
  auto registered = [&](Qubit q) {
    return std::any_of(regs.begin(), regs.end(), [q](const Register& r) { return r.contains(q); });
  };
  for (std::size_t li = 0; li < c.layers().size(); ++li) {
    const int layer = static_cast<int>(li);
    std::set<Qubit> used;
    for (const auto& g : c.layers()[li]) {
      const auto qs = gate_qubits(g);
      std::set<Qubit> own(qs.begin(), qs.end());
      if (own.size() != qs.size()) out.push_back({layer, "gate references a qubit twice"});
      for (Qubit q : own) {
        if (!registered(q)) out.push_back({layer, "qubit " + std::to_string(q) + " is not in any register"});
        if (!used.insert(q).second) out.push_back({layer, "qubit " + std::to_string(q) + " used by two gates"});
      }
      std::visit(Overloaded{
                     [&](const gate::Phase& p) {
                       if (!angle_in_range(p.theta)) out.push_back({layer, "phase angle outside (-1, 1]"});
                     },
                     [&](const gate::GlobalPhase& p) {
                       if (!angle_in_range(p.theta)) out.push_back({layer, "global phase outside (-1, 1]"});
                     },
                     [&](const gate::ControlledZ& z) {
                       if (!angle_in_range(z.theta)) out.push_back({layer, "controlled phase outside (-1, 1]"});
                     },
                     [&](const gate::FanOut& f) {
                       if (f.targets.empty()) out.push_back({layer, "fan-out without targets"});
                     },
                     [&](const gate::GlobalTunable& t) {
                       if (t.empty()) out.push_back({layer, "global tunable gate without couplings"});
                       for (const auto& cp : t.couplings()) {
                         if (!angle_in_range(cp.theta) || std::fabs(cp.theta) < kZeroAngle) {
                           out.push_back({layer, "coupling angle not normalized"});
                         }
                       }
                     },
                     [&](const gate::PrimitiveAnd& a) {
                       if (a.inputs.empty()) out.push_back({layer, "AND without inputs"});
                     },
                     [&](const gate::MultiControlledX& x) {
                       if (x.controls.empty()) out.push_back({layer, "multi-controlled X without controls"});
                     },
                     [](const auto&) {},
                 },
                 g);
    }
  }
  return out;
}

ResourceReport resources(const Circuit& c) {
  const auto violations = validate(c);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error("invalid circuit (layer " + std::to_string(v.layer) + "): " + v.message);
  }
  ResourceReport r;
  r.depth = static_cast<int>(c.layers().size());
  r.total_qubits = c.num_qubits();
  for (const auto& reg : c.registers()) {
    if (reg.role == Role::Ancilla) r.ancilla_count += reg.length;
  }
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) {
      const int arity = static_cast<int>(gate_qubits(g).size());
      if (std::holds_alternative<gate::FanOut>(g)) {
        ++r.fanout_count;
        r.max_fanout_arity = std::max(r.max_fanout_arity, arity);
      } else if (std::holds_alternative<gate::GlobalTunable>(g)) {
        ++r.gt_count;
        r.max_gt_arity = std::max(r.max_gt_arity, arity);
      } else if (std::holds_alternative<gate::PrimitiveAnd>(g)) {
        ++r.and_count;
        r.max_and_arity = std::max(r.max_and_arity, arity);
      } else if (arity == 0) {
        // Global phases carry no qubits and are not counted as gates.
      } else if (arity <= 2) {
        ++r.single_and_two_qubit_count;
      } else {
        ++r.other_gate_count;
      }
    }
  }
  return r;
}

AndCostEstimate estimate_and_cost(const Circuit& c) {
  AndCostEstimate e;
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) {
      if (const auto* a = std::get_if<gate::PrimitiveAnd>(&g)) {
        const long n = static_cast<long>(a->inputs.size());
        e.fanout_gates += 6 * n;
        e.fanout_ancillae += 2 * n * ceil_log2(static_cast<int>(n));
        e.gt_gates += 4;
        e.gt_ancillae += 2 * n;
      }
    }
  }
  return e;
}

CircuitBuilder::CircuitBuilder(const Circuit& base) : registers_(base.registers()), next_(base.num_qubits()) {}

Register CircuitBuilder::add_register(std::string name, Role role, int length) {
  if (length < 1) throw Error("register '" + name + "' must have positive length");
  Register r{std::move(name), role, next_, length};
  next_ += length;
  registers_.push_back(r);
  return r;
}

void CircuitBuilder::add(Layer layer) {
  if (!layer.empty()) layers_.push_back(std::move(layer));
}

void CircuitBuilder::add(std::span<const Layer> layers) {
  for (const auto& l : layers) add(l);
}

Circuit CircuitBuilder::build() const { return Circuit(registers_, layers_); }

AncillaPool::AncillaPool(CircuitBuilder& builder, std::string prefix) : builder_(&builder), prefix_(std::move(prefix)) {}

std::vector<Qubit> AncillaPool::acquire(int count) {
  if (count <= 0) return {};
  const std::size_t need = used_ + static_cast<std::size_t>(count);
  if (need > all_.size()) {
    const int grow = static_cast<int>(need - all_.size());
    const Register r = builder_->add_register(prefix_ + std::to_string(chunks_++), Role::Ancilla, grow);
    for (int i = 0; i < grow; ++i) all_.push_back(r[i]);
  }
  std::vector<Qubit> out(all_.begin() + static_cast<long>(used_), all_.begin() + static_cast<long>(need));
  used_ = need;
  return out;
}

void AncillaPool::reset() { used_ = 0; }

Layer hadamards(std::span<const Qubit> qubits) {
  Layer l;
  for (Qubit q : qubits) l.push_back(gate::H{q});
  return l;
}

Layer paulis(std::span<const Qubit> qubits) {
  Layer l;
  for (Qubit q : qubits) l.push_back(gate::X{q});
  return l;
}

}  // namespace cdsynth

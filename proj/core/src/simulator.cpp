#include "cdsynth/simulator.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "cdsynth/error.hpp"

namespace cdsynth {
namespace {

using AmplitudeMap = absl::flat_hash_map<BasisKey, Complex>;

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Complex cis(double half_turns) { return std::polar(1.0, kPi * half_turns); }

bool all_set(const BasisKey& k, std::span<const Qubit> qs) {
  return std::all_of(qs.begin(), qs.end(), [&](Qubit q) { return key_bit(k, q); });
}

// Phase in half-turns picked up by a diagonal gate on basis state k.
double diagonal_phase(const Gate& g, const BasisKey& k) {
  if (const auto* p = std::get_if<gate::Phase>(&g)) return key_bit(k, p->q) ? p->theta : 0.0;
  if (const auto* p = std::get_if<gate::GlobalPhase>(&g)) return p->theta;
  if (const auto* p = std::get_if<gate::ControlledZ>(&g)) {
    return (key_bit(k, p->target) && all_set(k, p->controls)) ? p->theta : 0.0;
  }
  if (const auto* p = std::get_if<gate::GlobalTunable>(&g)) {
    double sum = 0.0;
    for (const auto& cp : p->couplings()) {
      if (key_bit(k, cp.control) && key_bit(k, cp.target)) sum += cp.theta;
    }
    return sum;
  }
  return 0.0;
}

bool is_permutation(const Gate& g) {
  return std::holds_alternative<gate::X>(g) || std::holds_alternative<gate::FanOut>(g) ||
         std::holds_alternative<gate::Swap>(g) || std::holds_alternative<gate::ControlledSwap>(g) ||
         std::holds_alternative<gate::MultiControlledX>(g) || std::holds_alternative<gate::PrimitiveAnd>(g);
}

void permute(const Gate& g, BasisKey& k) {
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, gate::X>) {
          flip_bit(k, op.q);
        } else if constexpr (std::is_same_v<T, gate::FanOut>) {
          if (key_bit(k, op.control)) {
            for (Qubit t : op.targets) flip_bit(k, t);
          }
        } else if constexpr (std::is_same_v<T, gate::Swap>) {
          if (key_bit(k, op.a) != key_bit(k, op.b)) {
            flip_bit(k, op.a);
            flip_bit(k, op.b);
          }
        } else if constexpr (std::is_same_v<T, gate::ControlledSwap>) {
          if (key_bit(k, op.control) && key_bit(k, op.a) != key_bit(k, op.b)) {
            flip_bit(k, op.a);
            flip_bit(k, op.b);
          }
        } else if constexpr (std::is_same_v<T, gate::MultiControlledX>) {
          if (all_set(k, op.controls)) flip_bit(k, op.target);
        } else if constexpr (std::is_same_v<T, gate::PrimitiveAnd>) {
          if (all_set(k, op.inputs)) flip_bit(k, op.target);
        }
      },
      g);
}

std::vector<Amplitude> to_vector(const AmplitudeMap& m) {
  std::vector<Amplitude> out;
  out.reserve(m.size());
  for (const auto& [k, v] : m) {
    if (std::abs(v) >= kPruneCutoff) out.push_back({k, v});
  }
  return out;
}

// Permutations and diagonal phases act pointwise; they run in one pass.
void apply_pointwise(std::span<const Gate* const> gates, std::vector<Amplitude>& amps) {
  if (gates.empty()) return;
  for (auto& a : amps) {
    double phase = 0.0;
    for (const Gate* g : gates) {
      if (is_permutation(*g)) {
        permute(*g, a.key);
      } else {
        phase += diagonal_phase(*g, a.key);
      }
    }
    if (phase != 0.0) a.value *= cis(phase);
  }
}

std::vector<Amplitude> apply_hadamard(Qubit q, const std::vector<Amplitude>& amps) {
  AmplitudeMap out;
  out.reserve(amps.size() * 2);
  for (const auto& a : amps) {
    BasisKey k0 = a.key;
    set_bit(k0, q, false);
    BasisKey k1 = k0;
    flip_bit(k1, q);
    const Complex h = a.value * kInvSqrt2;
    out[k0] += h;
    out[k1] += key_bit(a.key, q) ? -h : h;
  }
  return to_vector(out);
}

std::vector<Amplitude> apply_controlled_u(const gate::ControlledU& g, const std::vector<Amplitude>& amps) {
  AmplitudeMap out;
  out.reserve(amps.size() * 2);
  for (const auto& a : amps) {
    if (!key_bit(a.key, g.control)) {
      out[a.key] += a.value;
      continue;
    }
    const int b = key_bit(a.key, g.target) ? 1 : 0;
    BasisKey k0 = a.key;
    set_bit(k0, g.target, false);
    BasisKey k1 = k0;
    flip_bit(k1, g.target);
    out[k0] += g.u(0, b) * a.value;
    out[k1] += g.u(1, b) * a.value;
  }
  return to_vector(out);
}

void apply_layer(const Layer& layer, std::vector<Amplitude>& amps) {
  std::vector<const Gate*> pointwise;
  for (const auto& g : layer) {
    if (!std::holds_alternative<gate::H>(g) && !std::holds_alternative<gate::ControlledU>(g)) pointwise.push_back(&g);
  }
  apply_pointwise(pointwise, amps);
  for (const auto& g : layer) {
    if (const auto* h = std::get_if<gate::H>(&g)) {
      amps = apply_hadamard(h->q, amps);
    } else if (const auto* cu = std::get_if<gate::ControlledU>(&g)) {
      amps = apply_controlled_u(*cu, amps);
    }
  }
}

// H_Q M H_Q where every gate of M touching Q is a Fan-Out inside Q (which becomes a PARITY) or a
// diagonal gate whose phase is affine in the Q bits (which becomes a rotation H Z(a) H per qubit).
struct FusedWindow {
  std::vector<const gate::FanOut*> parities;
  std::vector<std::pair<const Gate*, std::vector<Qubit>>> kickbacks;  // gate, its qubits in Q
  Layer passthrough;
};

std::optional<std::set<Qubit>> hadamard_set(const Layer& layer) {
  std::set<Qubit> qs;
  for (const auto& g : layer) {
    const auto* h = std::get_if<gate::H>(&g);
    if (!h) return std::nullopt;
    qs.insert(h->q);
  }
  return qs;
}

std::optional<FusedWindow> plan_window(const Layer& open, const Layer& middle, const Layer& close) {
  const auto q_open = hadamard_set(open);
  if (!q_open || q_open->empty()) return std::nullopt;
  const auto q_close = hadamard_set(close);
  if (!q_close || *q_close != *q_open) return std::nullopt;
  const auto& Q = *q_open;
  auto in_q = [&](Qubit q) { return Q.count(q) > 0; };

  FusedWindow w;
  for (const auto& g : middle) {
    const auto qs = gate_qubits(g);
    std::vector<Qubit> touched;
    for (Qubit q : qs) {
      if (in_q(q)) touched.push_back(q);
    }
    if (touched.empty()) {
      w.passthrough.push_back(g);
      continue;
    }
    if (const auto* fo = std::get_if<gate::FanOut>(&g)) {
      if (touched.size() != qs.size()) return std::nullopt;
      w.parities.push_back(fo);
      continue;
    }
    if (!is_diagonal(g)) return std::nullopt;
    if (const auto* gt = std::get_if<gate::GlobalTunable>(&g)) {
      for (const auto& cp : gt->couplings()) {
        if (in_q(cp.control) && in_q(cp.target)) return std::nullopt;
      }
    } else if (touched.size() > 1) {
      return std::nullopt;
    }
    w.kickbacks.emplace_back(&g, std::move(touched));
  }
  return w;
}

std::vector<Amplitude> apply_window(const FusedWindow& w, const std::vector<Amplitude>& amps) {
  AmplitudeMap out;
  out.reserve(amps.size() * 2);
  std::vector<std::pair<Qubit, Complex>> rotations;
  std::vector<Amplitude> branches;
  for (const auto& a : amps) {
    BasisKey k = a.key;
    for (const auto* fo : w.parities) {
      bool parity = false;
      for (Qubit t : fo->targets) parity ^= key_bit(k, t);
      if (parity) flip_bit(k, fo->control);
    }
    Complex amp = a.value;
    rotations.clear();
    for (const auto& [g, touched] : w.kickbacks) {
      BasisKey probe = a.key;
      for (Qubit q : touched) set_bit(probe, q, false);
      const double base = diagonal_phase(*g, probe);
      amp *= cis(base);
      for (Qubit q : touched) {
        flip_bit(probe, q);
        const double slope = diagonal_phase(*g, probe) - base;
        flip_bit(probe, q);
        const double r = reduce_angle(slope);
        if (r == 0.0) continue;
        rotations.emplace_back(q, cis(r));
      }
    }
    branches.assign(1, Amplitude{k, amp});
    for (const auto& [q, e] : rotations) {
      const Complex stay = 0.5 * (1.0 + e);
      const Complex flip = 0.5 * (1.0 - e);
      const std::size_t count = branches.size();
      for (std::size_t i = 0; i < count; ++i) {
        if (std::abs(stay) >= kPruneCutoff && std::abs(flip) >= kPruneCutoff) {
          Amplitude other = branches[i];
          flip_bit(other.key, q);
          other.value *= flip;
          branches[i].value *= stay;
          branches.push_back(other);
        } else if (std::abs(stay) < kPruneCutoff) {
          flip_bit(branches[i].key, q);
          branches[i].value *= flip;
        } else {
          branches[i].value *= stay;
        }
      }
    }
    for (const auto& b : branches) out[b.key] += b.value;
  }
  auto result = to_vector(out);
  apply_layer(w.passthrough, result);
  return result;
}

// H_Q M_1 ... M_k H_Q where the middle is a classical reversible map with phases: every qubit
// carries an affine form over the Q bits, no gate writes Q, non-Q forms end constant, and every
// phase is affine in the Q bits. The window then acts on Q as one rotation H Z(b_q) H per qubit.
struct PhaseTerm {
  double theta = 0.0;
  std::vector<Qubit> constant_qubits;  // product of their bits gates the term
  Qubit form_qubit = -1;               // qubit whose form carries the Q dependence, if any
  std::uint64_t lin = 0;               // that form's linear part over Q positions
};

struct AffineWindow {
  std::vector<Qubit> q;
  std::vector<std::variant<const Gate*, PhaseTerm>> steps;
  int end = 0;  // index of the closing H layer
};

constexpr int kMaxWindowLayers = 64;

std::optional<AffineWindow> plan_affine_window(const std::vector<Layer>& layers, int open, int stop,
                                               int num_qubits) {
  const auto q_open = hadamard_set(layers[open]);
  if (!q_open || q_open->empty() || q_open->size() > 64) return std::nullopt;
  int close = -1;
  for (int j = open + 1; j < stop && j <= open + kMaxWindowLayers; ++j) {
    bool mixing = false;
    for (const auto& g : layers[j]) {
      mixing |= std::holds_alternative<gate::H>(g) || std::holds_alternative<gate::ControlledU>(g);
    }
    if (!mixing) continue;
    const auto q_close = hadamard_set(layers[j]);
    if (!q_close || *q_close != *q_open) return std::nullopt;
    close = j;
    break;
  }
  if (close < 0) return std::nullopt;

  AffineWindow w;
  w.q.assign(q_open->begin(), q_open->end());
  w.end = close;
  std::vector<std::uint64_t> lin(static_cast<std::size_t>(num_qubits), 0);
  std::vector<bool> in_q(static_cast<std::size_t>(num_qubits), false);
  for (std::size_t k = 0; k < w.q.size(); ++k) {
    lin[w.q[k]] = std::uint64_t{1} << k;
    in_q[w.q[k]] = true;
  }
  auto affine_ok = [](std::uint64_t l, double theta) { return std::popcount(l) <= 1 || theta == 1.0; };
  // Phase theta on the product of `qs`; at most one factor may depend on Q.
  auto product_term = [&](double theta, std::span<const Qubit> qs) -> std::optional<PhaseTerm> {
    PhaseTerm t;
    t.theta = theta;
    for (Qubit q : qs) {
      if (lin[q] == 0) {
        t.constant_qubits.push_back(q);
      } else {
        if (t.form_qubit >= 0) return std::nullopt;
        t.form_qubit = q;
        t.lin = lin[q];
      }
    }
    if (t.form_qubit >= 0 && !affine_ok(t.lin, theta)) return std::nullopt;
    return t;
  };
  auto writes_q = [&](Qubit q) { return in_q[q]; };

  for (int j = open + 1; j < close; ++j) {
    for (const auto& g : layers[j]) {
      bool ok = true;
      std::visit(
          [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, gate::X>) {
              ok = !writes_q(op.q);
              w.steps.emplace_back(&g);
            } else if constexpr (std::is_same_v<T, gate::FanOut>) {
              for (Qubit t : op.targets) {
                ok = ok && !writes_q(t);
                lin[t] ^= lin[op.control];
              }
              w.steps.emplace_back(&g);
            } else if constexpr (std::is_same_v<T, gate::Swap>) {
              ok = !writes_q(op.a) && !writes_q(op.b);
              std::swap(lin[op.a], lin[op.b]);
              w.steps.emplace_back(&g);
            } else if constexpr (std::is_same_v<T, gate::ControlledSwap>) {
              ok = !writes_q(op.a) && !writes_q(op.b) && lin[op.control] == 0 && lin[op.a] == 0 && lin[op.b] == 0;
              w.steps.emplace_back(&g);
            } else if constexpr (std::is_same_v<T, gate::MultiControlledX> || std::is_same_v<T, gate::PrimitiveAnd>) {
              const auto& controls = [&]() -> const std::vector<Qubit>& {
                if constexpr (std::is_same_v<T, gate::PrimitiveAnd>) return op.inputs;
                else return op.controls;
              }();
              ok = !writes_q(op.target);
              for (Qubit c : controls) ok = ok && lin[c] == 0;
              w.steps.emplace_back(&g);
            } else if constexpr (std::is_same_v<T, gate::Phase>) {
              const Qubit qs[] = {op.q};
              auto t = product_term(op.theta, qs);
              ok = t.has_value();
              if (ok) w.steps.emplace_back(std::move(*t));
            } else if constexpr (std::is_same_v<T, gate::GlobalPhase>) {
              w.steps.emplace_back(PhaseTerm{op.theta, {}, -1, 0});
            } else if constexpr (std::is_same_v<T, gate::ControlledZ>) {
              std::vector<Qubit> qs = op.controls;
              qs.push_back(op.target);
              auto t = product_term(op.theta, qs);
              ok = t.has_value();
              if (ok) w.steps.emplace_back(std::move(*t));
            } else if constexpr (std::is_same_v<T, gate::GlobalTunable>) {
              for (const auto& cp : op.couplings()) {
                const Qubit qs[] = {cp.control, cp.target};
                auto t = product_term(cp.theta, qs);
                if (!t) {
                  ok = false;
                  break;
                }
                w.steps.emplace_back(std::move(*t));
              }
            } else {
              ok = false;
            }
          },
          g);
      if (!ok) return std::nullopt;
    }
  }
  for (int q = 0; q < num_qubits; ++q) {
    if (!in_q[q] && lin[q] != 0) return std::nullopt;
  }
  return w;
}

std::vector<Amplitude> apply_affine_window(const AffineWindow& w, const std::vector<Amplitude>& amps) {
  AmplitudeMap out;
  out.reserve(amps.size() * 2);
  std::vector<double> slope(w.q.size());
  std::vector<Amplitude> branches;
  for (const auto& a : amps) {
    BasisKey k = a.key;
    for (Qubit q : w.q) set_bit(k, q, false);
    double offset = 0.0;
    std::fill(slope.begin(), slope.end(), 0.0);
    for (const auto& step : w.steps) {
      if (const auto* g = std::get_if<const Gate*>(&step)) {
        permute(**g, k);
        continue;
      }
      const auto& t = std::get<PhaseTerm>(step);
      if (!all_set(k, t.constant_qubits)) continue;
      if (t.form_qubit < 0) {
        offset += t.theta;
        continue;
      }
      const bool c = key_bit(k, t.form_qubit);
      if (std::popcount(t.lin) == 1) {
        if (c) offset += t.theta;
        slope[static_cast<std::size_t>(std::countr_zero(t.lin))] += c ? -t.theta : t.theta;
      } else {
        if (c) offset += 1.0;
        for (std::uint64_t l = t.lin; l; l &= l - 1) slope[static_cast<std::size_t>(std::countr_zero(l))] += 1.0;
      }
    }
    for (Qubit q : w.q) set_bit(k, q, key_bit(a.key, q));
    branches.assign(1, Amplitude{k, a.value * cis(offset)});
    for (std::size_t idx = 0; idx < w.q.size(); ++idx) {
      const double r = reduce_angle(slope[idx]);
      if (r == 0.0) continue;
      const Complex e = cis(r);
      const Complex stay = 0.5 * (1.0 + e);
      const Complex flip = 0.5 * (1.0 - e);
      const Qubit q = w.q[idx];
      const std::size_t count = branches.size();
      for (std::size_t i = 0; i < count; ++i) {
        if (std::abs(stay) < kPruneCutoff) {
          flip_bit(branches[i].key, q);
          branches[i].value *= flip;
        } else if (std::abs(flip) < kPruneCutoff) {
          branches[i].value *= stay;
        } else {
          Amplitude other = branches[i];
          flip_bit(other.key, q);
          other.value *= flip;
          branches[i].value *= stay;
          branches.push_back(other);
        }
      }
    }
    for (const auto& b : branches) out[b.key] += b.value;
  }
  return to_vector(out);
}

double total_norm(const std::vector<Amplitude>& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a.value);
  return s;
}

BasisKey mask_key(std::span<const Qubit> qubits) {
  BasisKey k{};
  for (Qubit q : qubits) set_bit(k, q, true);
  return k;
}

bool intersects(const BasisKey& a, const BasisKey& b) {
  for (int i = 0; i < 4; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

}  // namespace

SparseState::SparseState(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxSimulatedQubits) throw Error("simulator supports at most 256 qubits");
  amps_.push_back({BasisKey{}, Complex(1.0, 0.0)});
}

SparseState::SparseState(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits < 0 || num_qubits > kMaxSimulatedQubits) throw Error("simulator supports at most 256 qubits");
  std::erase_if(amps_, [](const Amplitude& a) { return std::abs(a.value) < kPruneCutoff; });
}

std::vector<Amplitude> SparseState::sorted() const {
  auto out = amps_;
  auto bits = [&](const BasisKey& k) {
    std::vector<bool> v(num_qubits_);
    for (int q = 0; q < num_qubits_; ++q) v[q] = key_bit(k, q);
    return v;
  };
  std::sort(out.begin(), out.end(), [&](const Amplitude& a, const Amplitude& b) { return bits(a.key) < bits(b.key); });
  return out;
}

Complex SparseState::amplitude(const BasisKey& key) const {
  for (const auto& a : amps_) {
    if (a.key == key) return a.value;
  }
  return {};
}

double SparseState::norm_squared() const { return total_norm(amps_); }

SimulationResult simulate(const Circuit& c, SparseState input, const SimulationOptions& options) {
  if (input.num_qubits() != c.num_qubits()) throw Error("state and circuit qubit counts differ");
  const auto& layers = c.layers();
  const int total = static_cast<int>(layers.size());
  const int stop = options.stop_after ? std::clamp(*options.stop_after, 0, total) : total;
  const double norm_in = std::sqrt(input.norm_squared());

  std::vector<Amplitude> amps = input.amplitudes();
  SimulationResult result{SparseState(c.num_qubits()), {}};
  result.support_after_layer.reserve(stop);
  for (int i = 0; i < stop;) {
    if (options.fuse && i + 3 <= stop) {
      if (auto w = plan_affine_window(layers, i, stop, c.num_qubits())) {
        amps = apply_affine_window(*w, amps);
        const int span = w->end - i + 1;
        result.support_after_layer.insert(result.support_after_layer.end(), static_cast<std::size_t>(span), amps.size());
        i += span;
        continue;
      }
      if (auto w = plan_window(layers[i], layers[i + 1], layers[i + 2])) {
        amps = apply_window(*w, amps);
        result.support_after_layer.insert(result.support_after_layer.end(), 3, amps.size());
        i += 3;
        continue;
      }
    }
    apply_layer(layers[i], amps);
    result.support_after_layer.push_back(amps.size());
    ++i;
  }
  const double norm_out = std::sqrt(total_norm(amps));
  if (std::abs(norm_out - norm_in) > kNormTolerance) throw Error("normalization drift during simulation");
  result.state = SparseState(c.num_qubits(), std::move(amps));
  return result;
}

SparseState apply(const Circuit& c, SparseState input) { return simulate(c, std::move(input)).state; }

int logical_width(const Circuit& c) { return static_cast<int>(c.logical_qubits().size()); }

namespace {

BasisKey logical_key(std::span<const Qubit> logical, std::uint64_t index) {
  BasisKey k{};
  const int width = static_cast<int>(logical.size());
  for (int l = 0; l < width; ++l) {
    if ((index >> (width - 1 - l)) & 1U) set_bit(k, logical[l], true);
  }
  return k;
}

struct Comparison {
  double deviation;
  double ancilla_mass;
};

// ||out - e^{i phase} expected||_2 with the expected vector given on logical keys.
Comparison compare(const std::vector<Amplitude>& out, const AmplitudeMap& expected, Complex phase,
                   const BasisKey& ancilla_mask) {
  double dev = 0.0;
  double mass = 0.0;
  absl::flat_hash_set<BasisKey> seen;
  seen.reserve(out.size());
  for (const auto& a : out) {
    if (intersects(a.key, ancilla_mask)) mass += std::norm(a.value);
    Complex diff = a.value;
    if (const auto it = expected.find(a.key); it != expected.end()) diff -= phase * it->second;
    dev += std::norm(diff);
    seen.insert(a.key);
  }
  // Expected entries the circuit never produced count in full.
  for (const auto& [k, v] : expected) {
    if (!seen.contains(k)) dev += std::norm(v);
  }
  return {std::sqrt(dev), mass};
}

Complex best_phase(const std::vector<Amplitude>& out, const AmplitudeMap& expected) {
  Complex overlap{};
  for (const auto& a : out) {
    const auto it = expected.find(a.key);
    if (it != expected.end()) overlap += std::conj(it->second) * a.value;
  }
  if (std::abs(overlap) < 1e-15) return {1.0, 0.0};
  return overlap / std::abs(overlap);
}

}  // namespace

BasisKey logical_basis_key(const Circuit& c, std::uint64_t logical_index) {
  const auto logical = c.logical_qubits();
  return logical_key(logical, logical_index);
}

std::array<Complex, 2> reference_ucg(const UnitaryFunction& f, Mask x, std::array<Complex, 2> target) {
  const Unitary2& u = f(x);
  return {u(0, 0) * target[0] + u(0, 1) * target[1], u(1, 0) * target[0] + u(1, 1) * target[1]};
}

namespace {

using Image = std::vector<std::pair<std::uint64_t, Complex>>;

ExpectedMap permutation_map(int width, std::function<std::uint64_t(std::uint64_t)> perm) {
  return ExpectedMap{width, [perm = std::move(perm)](std::uint64_t i) { return Image{{perm(i), Complex(1.0, 0.0)}}; },
                     true};
}

}  // namespace

ExpectedMap expected_fin(const BooleanFunction& f) {
  return permutation_map(f.arity() + 1, [f](std::uint64_t i) { return i ^ (f(static_cast<Mask>(i >> 1)) ? 1U : 0U); });
}

ExpectedMap expected_ucg(const UnitaryFunction& f) {
  return ExpectedMap{f.arity() + 1,
                     [f](std::uint64_t i) {
                       const Mask x = static_cast<Mask>(i >> 1);
                       const int b = static_cast<int>(i & 1U);
                       const auto col = reference_ucg(f, x, b ? std::array<Complex, 2>{0.0, 1.0}
                                                              : std::array<Complex, 2>{1.0, 0.0});
                       return Image{{std::uint64_t{x} << 1, col[0]}, {(std::uint64_t{x} << 1) | 1U, col[1]}};
                     },
                     false};
}

ExpectedMap expected_qram(int n) {
  const int a = log2_exact(n);
  return permutation_map(a + 1 + n, [n](std::uint64_t idx) {
    const std::uint64_t addr = idx >> (n + 1);
    const std::uint64_t bit = (idx >> (n - 1 - addr)) & 1U;
    return idx ^ (bit << n);
  });
}

ExpectedMap expected_qrag(int n) {
  const int a = log2_exact(n);
  return permutation_map(a + 1 + n, [n](std::uint64_t idx) {
    const std::uint64_t addr = idx >> (n + 1);
    const int cell = n - 1 - static_cast<int>(addr);
    const std::uint64_t b = (idx >> n) & 1U;
    const std::uint64_t x = (idx >> cell) & 1U;
    if (b != x) idx ^= (std::uint64_t{1} << n) | (std::uint64_t{1} << cell);
    return idx;
  });
}

VerifyReport verify_map(const Circuit& c, const ExpectedMap& expected, const VerifyOptions& options) {
  const auto logical = c.logical_qubits();
  if (static_cast<int>(logical.size()) != expected.width) {
    throw Error("expected map width " + std::to_string(expected.width) + " does not match " +
                std::to_string(logical.size()) + " logical qubits");
  }
  if (expected.width > 24) throw Error("logical register too wide to verify");
  std::vector<Qubit> ancillae;
  const auto mask = c.ancilla_mask();
  for (int q = 0; q < c.num_qubits(); ++q) {
    if (mask[q]) ancillae.push_back(q);
  }
  const BasisKey ancilla_mask = mask_key(ancillae);
  const std::uint64_t dim = std::uint64_t{1} << expected.width;

  VerifyReport report;
  auto record = [&](const std::vector<Amplitude>& out, const AmplitudeMap& exp, Complex phase) {
    const auto cmp = compare(out, exp, phase, ancilla_mask);
    report.max_deviation = std::max(report.max_deviation, cmp.deviation);
    report.max_ancilla_mass = std::max(report.max_ancilla_mass, cmp.ancilla_mass);
    report.max_support = std::max(report.max_support, out.size());
    ++report.inputs;
  };

  if (options.mode == VerifyMode::BasisSweep) {
    std::optional<Complex> phase;
    for (std::uint64_t i = 0; i < dim; ++i) {
      SparseState in(c.num_qubits(), {{logical_key(logical, i), Complex(1.0, 0.0)}});
      const auto out = simulate(c, std::move(in)).state.amplitudes();
      AmplitudeMap exp;
      for (const auto& [j, v] : expected.image(i)) exp[logical_key(logical, j)] += v;
      if (!phase) phase = expected.up_to_global_phase ? best_phase(out, exp) : Complex(1.0, 0.0);
      record(out, exp, *phase);
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    for (int s = 0; s < options.count; ++s) {
      std::vector<Complex> coeffs(dim);
      double norm = 0.0;
      for (auto& z : coeffs) {
        z = Complex(gauss(rng), gauss(rng));
        norm += std::norm(z);
      }
      norm = std::sqrt(norm);
      std::vector<Amplitude> in;
      in.reserve(dim);
      AmplitudeMap exp;
      for (std::uint64_t i = 0; i < dim; ++i) {
        coeffs[i] /= norm;
        in.push_back({logical_key(logical, i), coeffs[i]});
        for (const auto& [j, v] : expected.image(i)) exp[logical_key(logical, j)] += coeffs[i] * v;
      }
      const auto out = simulate(c, SparseState(c.num_qubits(), std::move(in))).state.amplitudes();
      const Complex phase = expected.up_to_global_phase ? best_phase(out, exp) : Complex(1.0, 0.0);
      record(out, exp, phase);
    }
  }
  report.ancillae_clean = report.max_ancilla_mass <= kNormTolerance;
  return report;
}

MeasuredUcg measure_ucg(const Circuit& c) {
  const auto logical = c.logical_qubits();
  const int width = static_cast<int>(logical.size());
  if (width < 2) throw Error("UCG circuits need inputs and a target");
  MeasuredUcg m;
  const std::uint64_t inputs = std::uint64_t{1} << (width - 1);
  m.blocks.resize(inputs);
  for (std::uint64_t x = 0; x < inputs; ++x) {
    for (int b = 0; b < 2; ++b) {
      SparseState in(c.num_qubits(), {{logical_key(logical, (x << 1) | b), Complex(1.0, 0.0)}});
      const auto out = simulate(c, std::move(in)).state;
      const Complex a0 = out.amplitude(logical_key(logical, x << 1));
      const Complex a1 = out.amplitude(logical_key(logical, (x << 1) | 1U));
      m.blocks[x][b] = a0;
      m.blocks[x][2 + b] = a1;
      m.max_leakage = std::max(m.max_leakage, std::max(0.0, 1.0 - std::norm(a0) - std::norm(a1)));
    }
  }
  return m;
}

double max_spectral_deviation(const MeasuredUcg& measured, const UnitaryFunction& f) {
  if (measured.blocks.size() != f.size()) throw Error("measured UCG size differs from the reference");
  double worst = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    worst = std::max(worst, spectral_distance(Unitary2(measured.blocks[x]), f(static_cast<Mask>(x))));
  }
  return worst;
}

}  // namespace cdsynth

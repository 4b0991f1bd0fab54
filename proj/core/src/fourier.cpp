#include <bit>
#include <map>
#include <numbers>
#include <optional>
#include <set>

#include "cdsynth/error.hpp"
#include "cdsynth/synth_boolean.hpp"
#include "phase_body.hpp"
#include "term_layout.hpp"

namespace cdsynth {
namespace {

double value_at_zero(const SparsePolynomial& p) {
  double sum = 0.0;
  for (const auto& [s, c] : p.terms()) sum += c;
  return sum;
}

void push_phase(Layer& layer, Qubit q, double theta) {
  if (const double a = reduce_angle(theta); a != 0.0) layer.push_back(gate::Phase{q, a});
}

void check_term_count(const TermSupport& s) {
  if (s.above0.size() > static_cast<std::size_t>(kMaxTerms)) {
    throw Error("polynomial has " + std::to_string(s.above0.size()) + " nonconstant terms (limit " +
                std::to_string(kMaxTerms) + ")");
  }
}

std::vector<Qubit> qubits_of(const Register& r) { return r.qubits(); }

// Parity qubits for the multi-variable terms, computed in place. Singletons keep the variable qubit.
struct ParityBlock {
  std::map<Mask, Qubit> control;
  std::vector<Layer> copy;
  std::vector<Layer> compute;
};

ParityBlock build_parities(CircuitBuilder& b, int n, std::span<const Qubit> vars, const TermSupport& s,
                           Backend backend) {
  ParityBlock pb;
  for (Mask m : s.above0) {
    if (mask_size(m) == 1) pb.control[m] = vars[mask_variables(n, m).front()];
  }
  if (s.above1.empty()) return pb;
  const Register p = b.add_register("p", Role::Ancilla, static_cast<int>(s.above1.size()));
  for (std::size_t k = 0; k < s.above1.size(); ++k) pb.control[s.above1[k]] = p[static_cast<int>(k)];
  if (backend == Backend::FanOut) {
    const auto copies = detail::allocate_copies(b, n, vars, s.above1);
    pb.copy = {Layer(copies.fanouts.begin(), copies.fanouts.end())};
    std::vector<std::vector<Layer>> sequences;
    for (Mask m : s.above1) sequences.push_back(fanout_to_parity(gate::FanOut{pb.control[m], copies.slots.at(m)}));
    pb.compute = zip_layers(sequences);
  } else {
    gate::GlobalTunable g;
    for (Mask m : s.above1) {
      for (int i : mask_variables(n, m)) g.add(vars[i], pb.control[m], 1.0);
    }
    const auto ps = qubits_of(p);
    pb.compute = {hadamards(ps), Layer{g}, hadamards(ps)};
  }
  return pb;
}

void fourier_ucg_body(CircuitBuilder& b, int n, std::span<const Qubit> vars, Qubit t, const ComponentPolys& polys,
                      Backend backend) {
  const TermSupport s = term_support(polys);
  check_term_count(s);
  ParityBlock pb = build_parities(b, n, vars, s, backend);
  detail::TermControls controls{std::move(pb.control), std::move(pb.copy), pb.compute, inverse(pb.compute)};
  detail::ucg_phase_body(b, t, polys, s, controls, {-2.0, true}, backend);
}

void fourier_fin_body(CircuitBuilder& b, int n, std::span<const Qubit> vars, Qubit t, const SparsePolynomial& gamma,
                      Backend backend) {
  const SparsePolynomial polys[] = {gamma};
  const TermSupport s = term_support(polys);
  check_term_count(s);
  const Layer flip_t = {gate::H{t}};
  Layer base;
  push_phase(base, t, value_at_zero(gamma));
  if (s.above0.empty()) {
    if (!base.empty()) {
      b.add(flip_t);
      b.add(base);
      b.add(flip_t);
    }
    return;
  }
  const int m = static_cast<int>(s.above0.size());

  if (backend == Backend::FanOut) {
    const ParityBlock pb = build_parities(b, n, vars, s, backend);
    const Register cat = b.add_register("tcat", Role::Ancilla, m);
    const gate::FanOut spread{t, cat.qubits()};
    const auto slot = detail::index_terms(s.above0);
    Layer phases = base;
    for (const auto& [mask, c] : gamma.terms()) {
      if (mask == 0) continue;
      if (const double a = reduce_angle(-2.0 * c); a != 0.0) {
        phases.push_back(gate::ControlledZ{{pb.control.at(mask)}, cat[slot.at(mask)], a});
      }
    }
    b.add(pb.copy);
    b.add(pb.compute);
    b.add(flip_t);
    b.add(Layer{spread});
    b.add(phases);
    b.add(Layer{spread});
    b.add(flip_t);
    b.add(inverse(pb.compute));
    b.add(pb.copy);
    return;
  }

  // One GT computes every parity (singletons included) and the target cat state together.
  const Register p = b.add_register("p", Role::Ancilla, m);
  const Register cat = b.add_register("tcat", Role::Ancilla, m);
  std::map<Mask, Qubit> parity_of;
  for (int k = 0; k < m; ++k) parity_of[s.above0[k]] = p[k];
  auto fanouts = detail::term_fanouts(n, vars, s.above0, parity_of);
  fanouts.push_back(gate::FanOut{t, cat.qubits()});
  const auto spread = fanouts_to_gt(fanouts);
  Layer phases = base;
  for (int k = 0; k < m; ++k) {
    if (const double a = reduce_angle(-2.0 * gamma.coefficient(s.above0[k])); a != 0.0) {
      phases.push_back(gate::ControlledZ{{p[k]}, cat[k], a});
    }
  }
  b.add(flip_t);
  b.add(spread);
  b.add(phases);
  b.add(spread);
  b.add(flip_t);
}

SparsePolynomial low_degree_part(const SparsePolynomial& p) {
  SparsePolynomial out(p.arity(), p.basis());
  for (const auto& [s, c] : p.terms()) {
    if (mask_size(s) <= 1) out.set(s, c);
  }
  return out;
}

SparsePolynomial with_tail(SparsePolynomial low, const SparsePolynomial& tail) {
  for (const auto& [s, c] : tail.terms()) low.set(s, low.coefficient(s) + c);
  return low;
}

struct UcgRegisters {
  CircuitBuilder builder;
  std::vector<Qubit> vars;
  Qubit target;
};

UcgRegisters ucg_registers(int n) {
  UcgRegisters r;
  const Register x = r.builder.add_register("x", Role::Input, n);
  r.target = r.builder.add_register("t", Role::Target, 1)[0];
  r.vars = x.qubits();
  return r;
}

}  // namespace

namespace detail {

void ucg_phase_body(CircuitBuilder& b, Qubit t, const ComponentPolys& polys, const TermSupport& s,
                    const TermControls& controls, MonomialEncoding encoding, Backend backend) {
  auto base_angle = [&](const SparsePolynomial& p) {
    return encoding.constant_is_sum ? value_at_zero(p) : p.coefficient(0);
  };
  const Layer flip_t = {gate::H{t}};

  Layer alpha;
  for (const auto& [m, c] : polys[0].terms()) {
    if (m != 0) push_phase(alpha, controls.control.at(m), encoding.weight * c);
  }
  if (const double a = reduce_angle(base_angle(polys[0])); a != 0.0) alpha.push_back(gate::GlobalPhase{a});

  b.add(controls.copy);
  b.add(controls.compute);
  if (backend == Backend::FanOut) {
    const int m = static_cast<int>(s.above0.size());
    const auto slot = index_terms(s.above0);
    std::optional<gate::FanOut> spread;
    if (m > 0) spread = gate::FanOut{t, b.add_register("tcat", Role::Ancilla, m).qubits()};
    for (int component : {3, 2, 1}) {
      if (component != 3) b.add(flip_t);
      Layer phases;
      push_phase(phases, t, base_angle(polys[component]));
      for (const auto& [mask, c] : polys[component].terms()) {
        if (mask == 0) continue;
        if (const double a = reduce_angle(encoding.weight * c); a != 0.0) {
          phases.push_back(gate::ControlledZ{{controls.control.at(mask)}, spread->targets[slot.at(mask)], a});
        }
      }
      if (spread) b.add(Layer{*spread});
      b.add(phases);
      Layer closing;
      if (spread) closing.push_back(*spread);
      if (component == 1) closing.insert(closing.end(), alpha.begin(), alpha.end());
      b.add(closing);
    }
  } else {
    auto couplings = [&](int component) {
      gate::GlobalTunable g;
      for (const auto& [mask, c] : polys[component].terms()) {
        if (mask != 0) g.add(controls.control.at(mask), t, encoding.weight * c);
      }
      return g.empty() ? Layer{} : Layer{g};
    };
    auto base = [&](int component) {
      Layer l;
      push_phase(l, t, base_angle(polys[component]));
      return l;
    };
    b.add(base(3));
    b.add(couplings(3));
    b.add(flip_t);
    b.add(base(2));
    b.add(couplings(2));
    b.add(flip_t);
    b.add(couplings(1));
    Layer closing = base(1);
    closing.insert(closing.end(), alpha.begin(), alpha.end());
    b.add(closing);
  }
  b.add(controls.uncompute);
  b.add(controls.copy);
}

}  // namespace detail

ComponentPolys fourier_components(const UnitaryFunction& f) {
  const ZTables tables = decompose_function(f);
  return {fourier_transform(tables.alpha), fourier_transform(tables.beta), fourier_transform(tables.gamma),
          fourier_transform(tables.delta)};
}

ComponentPolys approx_fourier_components(const UnitaryFunction& f, double eps_prime, std::uint64_t seed) {
  const ZTables tables = decompose_function(f);
  ComponentPolys out{SparsePolynomial(f.arity(), Basis::FourierPM1), SparsePolynomial(f.arity(), Basis::FourierPM1),
                     SparsePolynomial(f.arity(), Basis::FourierPM1), SparsePolynomial(f.arity(), Basis::FourierPM1)};
  for (int c = 0; c < 4; ++c) {
    const RealFunction& table = tables.component(c);
    const auto tail = approx_sparse(table, eps_prime, 1, seed + static_cast<std::uint64_t>(c));
    out[c] = with_tail(low_degree_part(fourier_transform(table)), tail.poly);
  }
  return out;
}

TermSupport term_support(std::span<const SparsePolynomial> polys) {
  std::set<Mask> terms;
  for (const auto& p : polys) {
    for (const auto& [s, c] : p.terms()) {
      if (s != 0) terms.insert(s);
    }
  }
  TermSupport out;
  Mask united = 0;
  for (Mask s : terms) {
    out.above0.push_back(s);
    out.size_sum += mask_size(s);
    if (mask_size(s) > 1) {
      out.above1.push_back(s);
      united |= s;
    }
  }
  out.union_above1 = mask_size(united);
  return out;
}

double ucg_component_tolerance(double eps) { return eps / (4.0 * std::numbers::pi); }
double fin_component_tolerance(double eps) { return eps / std::numbers::pi; }

Circuit synth_ucg_from_fourier(const ComponentPolys& polys, Backend backend) {
  auto r = ucg_registers(polys[0].arity());
  fourier_ucg_body(r.builder, polys[0].arity(), r.vars, r.target, polys, backend);
  return r.builder.build();
}

Circuit synth_ucg_fourier(const UnitaryFunction& f, Backend backend) {
  return synth_ucg_from_fourier(fourier_components(f), backend);
}

Circuit synth_ucg_fourier_approx(const UnitaryFunction& f, double eps, Backend backend, std::uint64_t seed) {
  if (!(eps > 0.0)) throw Error("approximation error must be positive");
  return synth_ucg_from_fourier(approx_fourier_components(f, ucg_component_tolerance(eps), seed), backend);
}

Circuit synth_fin_fourier(const BooleanFunction& f, Backend backend) {
  auto r = ucg_registers(f.arity());
  fourier_fin_body(r.builder, f.arity(), r.vars, r.target, fourier_transform(f.to_real()), backend);
  return r.builder.build();
}

Circuit synth_fin_fourier_approx(const BooleanFunction& f, double eps, Backend backend, std::uint64_t seed) {
  if (!(eps > 0.0)) throw Error("approximation error must be positive");
  const RealFunction real = f.to_real();
  const auto tail = approx_sparse(real, fin_component_tolerance(eps), 1, seed);
  const SparsePolynomial gamma = with_tail(low_degree_part(fourier_transform(real)), tail.poly);
  auto r = ucg_registers(f.arity());
  fourier_fin_body(r.builder, f.arity(), r.vars, r.target, gamma, backend);
  return r.builder.build();
}

SparsePolynomial qram_fourier_coefficients(int n) {
  if (n < 2) throw Error("memory size must be at least 2");
  const int logn = log2_exact(n);
  const int arity = n + logn;
  SparsePolynomial p(arity, Basis::FourierPM1);
  p.set(0, 0.5);
  // x_j [i = j] = (1 - chi_{x_j}) / 2 * 2^-L * sum_T (-1)^{|j & T|} chi_T(i).
  const double weight = -0.5 / static_cast<double>(n);
  for (int j = 0; j < n; ++j) {
    for (Mask subset = 0; subset < static_cast<Mask>(n); ++subset) {
      const double sign = (std::popcount(static_cast<Mask>(j) & subset) & 1) ? -1.0 : 1.0;
      p.set(variable_bit(arity, j) | subset, sign * weight);
    }
  }
  return p;
}

Circuit synth_qram_fourier(int n, Backend backend) {
  const SparsePolynomial gamma = qram_fourier_coefficients(n);
  const int logn = log2_exact(n);
  CircuitBuilder b;
  const Register a = b.add_register("a", Role::Address, logn);
  const Register t = b.add_register("t", Role::Target, 1);
  const Register mem = b.add_register("m", Role::Memory, n);
  std::vector<Qubit> vars = mem.qubits();
  const auto address = a.qubits();
  vars.insert(vars.end(), address.begin(), address.end());
  fourier_fin_body(b, n + logn, vars, t[0], gamma, backend);
  return b.build();
}

Prediction predict_ucg_fourier(const TermSupport& s, Backend backend) {
  const int multi = static_cast<int>(s.above1.size());
  if (backend == Backend::FanOut) {
    return {2 * s.union_above1 + 2 * multi + 6, 0, s.size_sum + 2 * multi,
            "fanouts 2|U| + 2|supp>1| + 6; ancillae sum|S| + 2|supp>1|"};
  }
  return {0, 3 + (multi > 0 ? 2 : 0), multi, "gts 5 (3 without multi-variable terms); ancillae |supp>1|"};
}

Prediction predict_fin_fourier(const TermSupport& s, Backend backend) {
  const int multi = static_cast<int>(s.above1.size());
  if (s.above0.empty()) return {0, 0, 0, "constant function"};
  if (backend == Backend::FanOut) {
    return {2 * s.union_above1 + 2 * multi + 2, 0, s.size_sum + 2 * multi,
            "fanouts 2|U| + 2|supp>1| + 2; ancillae sum|S| + 2|supp>1|"};
  }
  return {0, 2, 2 * static_cast<int>(s.above0.size()), "gts 2; ancillae 2|supp>0|"};
}

}  // namespace cdsynth

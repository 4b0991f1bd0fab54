#include "cdsynth/onehot.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "and_stage.hpp"
#include "cdsynth/error.hpp"

namespace cdsynth {
namespace {

bool bit_at(Mask value, int width, int pos) { return (value >> (width - 1 - pos)) & 1U; }

// Copies of the block variables, their complementing flips, and one AND per block onto `e`.
struct BlockWiring {
  std::vector<gate::FanOut> copies;
  Layer flips;
  std::vector<detail::AndSpec> ands;
  Register e;
};

BlockWiring wire_blocks(CircuitBuilder& b, const Register& x, const OneHotPlan& plan) {
  const auto& js = plan.junta;
  int total = 0;
  for (const auto& blk : plan.blocks) total += js.t + static_cast<int>(blk.j_variables.size());

  BlockWiring w;
  std::optional<Register> copies;
  if (total > 0) copies = b.add_register("copies", Role::Ancilla, total);
  w.e = b.add_register("e", Role::Ancilla, static_cast<int>(plan.blocks.size()));

  std::vector<std::vector<Qubit>> targets(js.n);
  int next = 0;
  for (std::size_t k = 0; k < plan.blocks.size(); ++k) {
    const auto& blk = plan.blocks[k];
    detail::AndSpec spec{{}, w.e[static_cast<int>(k)]};
    auto take = [&](int var, bool value) {
      const Qubit q = (*copies)[next++];
      targets[var].push_back(q);
      spec.inputs.push_back(q);
      if (!value) w.flips.push_back(gate::X{q});
    };
    for (int p = 0; p < js.t; ++p) take(js.jbar_variables[p], bit_at(blk.z, js.t, p));
    const int width = static_cast<int>(blk.j_variables.size());
    for (int p = 0; p < width; ++p) take(blk.j_variables[p], bit_at(blk.j, width, p));
    w.ands.push_back(std::move(spec));
  }
  for (int v = 0; v < js.n; ++v) {
    if (!targets[v].empty()) w.copies.push_back(gate::FanOut{x[v], targets[v]});
  }
  return w;
}

Layer as_layer(std::span<const gate::FanOut> fanouts) { return Layer(fanouts.begin(), fanouts.end()); }

std::vector<Layer> copy_layers(std::span<const gate::FanOut> fanouts, Backend backend) {
  if (fanouts.empty()) return {};
  if (backend == Backend::FanOut) return {as_layer(fanouts)};
  return fanouts_to_gt(fanouts);
}

Layer gt_layer(const gate::GlobalTunable& g) { return g.empty() ? Layer{} : Layer{g}; }

int gt_and_ancillae(int arity) {
  if (arity == 0) return 0;
  const int p1 = or_reduction_width(arity);
  return p1 + or_reduction_width(p1);
}

int copy_fanout_count(const OneHotPlan& plan) {
  int count = 0;
  for (int c : plan.copies) count += c > 0 ? 1 : 0;
  return count;
}

int copy_qubits(const OneHotPlan& plan) {
  int total = 0;
  for (int c : plan.copies) total += c;
  return total;
}

int and_ancillae(const OneHotPlan& plan) {
  int total = 0;
  for (const auto& blk : plan.blocks) total += gt_and_ancillae(plan.junta.t + static_cast<int>(blk.j_variables.size()));
  return total;
}

// The GT AND stage costs four GTs (compute and uncompute) unless every block AND is empty.
int and_stage_gts(const OneHotPlan& plan) {
  const bool any = plan.junta.t > 0 || std::any_of(plan.blocks.begin(), plan.blocks.end(),
                                                   [](const OneHotBlock& blk) { return !blk.j_variables.empty(); });
  return any ? 4 : 0;
}

OneHotPlan plan_from_blocks(const JuntaStructure& js, std::vector<OneHotBlock> blocks) {
  OneHotPlan plan;
  plan.junta = js;
  plan.blocks = std::move(blocks);
  plan.m = static_cast<int>(plan.blocks.size());
  plan.copies.assign(js.n, 0);
  for (const auto& blk : plan.blocks) {
    for (int v : js.jbar_variables) ++plan.copies[v];
    for (int v : blk.j_variables) ++plan.copies[v];
  }
  return plan;
}

// Address-decoding shared by QRAM and QRAG: E_j = [A == j] using A itself as the copy for j = 0.
struct AddressDecoder {
  std::vector<gate::FanOut> copies;
  Layer flips;
  std::vector<detail::AndSpec> ands;
};

AddressDecoder decode_address(CircuitBuilder& b, const Register& a, const Register& e, int n) {
  const int width = a.length;
  AddressDecoder d;
  std::optional<Register> copies;
  if (n > 1) copies = b.add_register("a_copies", Role::Ancilla, (n - 1) * width);
  for (int k = 0; k < width; ++k) {
    std::vector<Qubit> targets;
    for (int j = 1; j < n; ++j) targets.push_back((*copies)[(j - 1) * width + k]);
    d.copies.push_back(gate::FanOut{a[k], targets});
  }
  for (int j = 0; j < n; ++j) {
    detail::AndSpec spec{{}, e[j]};
    for (int k = 0; k < width; ++k) {
      const Qubit q = j == 0 ? a[k] : (*copies)[(j - 1) * width + k];
      spec.inputs.push_back(q);
      if (!bit_at(static_cast<Mask>(j), width, k)) d.flips.push_back(gate::X{q});
    }
    d.ands.push_back(std::move(spec));
  }
  return d;
}

void check_memory_size(int n) {
  if (n < 2) throw Error("memory size must be at least 2");
  log2_exact(n);
}

}  // namespace

OneHotPlan plan_onehot(const JuntaStructure& js) {
  if (js.t + js.r > kOneHotCap) {
    throw Error("one-hot construction needs t + r <= " + std::to_string(kOneHotCap) + " (got t=" +
                std::to_string(js.t) + ", r=" + std::to_string(js.r) + ")");
  }
  std::vector<OneHotBlock> blocks;
  for (Mask z = 0; z < (Mask{1} << js.t); ++z) {
    const auto vars = mask_variables(js.n, js.per_restriction[z]);
    const int width = static_cast<int>(vars.size());
    for (Mask j = 0; j < (Mask{1} << width); ++j) {
      OneHotBlock blk{z, j, vars, js.restriction_input(z)};
      for (int p = 0; p < width; ++p) {
        if (bit_at(j, width, p)) blk.representative |= variable_bit(js.n, vars[p]);
      }
      blocks.push_back(std::move(blk));
    }
  }
  return plan_from_blocks(js, std::move(blocks));
}

OneHotPlan plan_fin_onehot(const BooleanFunction& f, Mask J) {
  const auto full = plan_onehot(junta_structure(f.to_real(), J));
  std::vector<OneHotBlock> kept;
  for (const auto& blk : full.blocks) {
    if (f(blk.representative)) kept.push_back(blk);
  }
  return plan_from_blocks(full.junta, std::move(kept));
}

namespace {

template <class Structure>
Mask choose_junta(int n, Structure&& structure) {
  const Mask full = n == 0 ? 0 : ((Mask{1} << n) - 1);
  if (n > 10) return full;
  Mask best = full;
  auto best_key = std::make_tuple(std::numeric_limits<long>::max(), 0, Mask{0});
  for (Mask J = 0; J <= full; ++J) {
    const JuntaStructure js = structure(J);
    if (js.t + js.r > kOneHotCap) continue;
    long m = 0;
    for (Mask rel : js.per_restriction) m += long{1} << mask_size(rel);
    const auto key = std::make_tuple(m, js.t, J);
    if (key < best_key) {
      best_key = key;
      best = J;
    }
  }
  return best;
}

}  // namespace

Mask choose_junta_set(const UnitaryFunction& f) {
  return choose_junta(f.arity(), [&](Mask J) { return junta_structure(f, J); });
}

Mask choose_junta_set(const BooleanFunction& f) {
  const RealFunction real = f.to_real();
  return choose_junta(f.arity(), [&](Mask J) { return junta_structure(real, J); });
}

Circuit synth_ucg_onehot(const UnitaryFunction& f, Mask J, Backend backend) {
  const int n = f.arity();
  const OneHotPlan plan = plan_onehot(junta_structure(f, J));
  const ZTables tables = decompose_function(f);

  CircuitBuilder b;
  const Register x = b.add_register("x", Role::Input, n);
  const Register t = b.add_register("t", Role::Target, 1);
  const BlockWiring w = wire_blocks(b, x, plan);
  const auto stage = detail::and_stage(w.ands, backend, b, "and_");
  const auto copy = copy_layers(w.copies, backend);
  const int m = plan.m;
  auto angle = [&](int component, int block) {
    return reduce_angle(tables.component(component)(plan.blocks[block].representative));
  };
  const Layer flip_t = {gate::H{t[0]}};

  b.add(copy);
  b.add(w.flips);
  b.add(stage.compute);
  Layer alpha;
  for (int k = 0; k < m; ++k) {
    if (const double a = angle(0, k); a != 0.0) alpha.push_back(gate::Phase{w.e[k], a});
  }
  if (backend == Backend::FanOut) {
    const Register cat = b.add_register("tcat", Role::Ancilla, m);
    const gate::FanOut spread{t[0], cat.qubits()};
    auto phases = [&](int component) {
      Layer l;
      for (int k = 0; k < m; ++k) {
        if (const double a = angle(component, k); a != 0.0) l.push_back(gate::ControlledZ{{w.e[k]}, cat[k], a});
      }
      return l;
    };
    for (int component : {3, 2, 1}) {
      if (component != 3) b.add(flip_t);
      b.add(Layer{spread});
      b.add(phases(component));
      Layer closing{spread};
      if (component == 1) closing.insert(closing.end(), alpha.begin(), alpha.end());
      b.add(closing);
    }
  } else {
    auto phases = [&](int component) {
      gate::GlobalTunable g;
      for (int k = 0; k < m; ++k) g.add(w.e[k], t[0], angle(component, k));
      return gt_layer(g);
    };
    b.add(phases(3));
    b.add(flip_t);
    b.add(phases(2));
    b.add(flip_t);
    b.add(phases(1));
    b.add(alpha);
  }
  b.add(stage.uncompute);
  b.add(w.flips);
  b.add(copy);
  return b.build();
}

Circuit synth_fin_onehot(const BooleanFunction& f, Mask J, Backend backend) {
  const int n = f.arity();
  const OneHotPlan plan = plan_fin_onehot(f, J);

  CircuitBuilder b;
  const Register x = b.add_register("x", Role::Input, n);
  const Register t = b.add_register("t", Role::Target, 1);
  if (plan.m == 0) return b.build();
  const BlockWiring w = wire_blocks(b, x, plan);
  const auto stage = detail::and_stage(w.ands, backend, b, "and_");
  const Register cat = b.add_register("tcat", Role::Ancilla, plan.m);
  const gate::FanOut spread{t[0], cat.qubits()};
  Layer marks;
  for (int k = 0; k < plan.m; ++k) marks.push_back(gate::ControlledZ{{w.e[k]}, cat[k], 1.0});
  const Layer flip_t = {gate::H{t[0]}};

  if (backend == Backend::FanOut) {
    const auto copy = copy_layers(w.copies, backend);
    b.add(copy);
    b.add(w.flips);
    b.add(stage.compute);
    b.add(flip_t);
    b.add(Layer{spread});
    b.add(marks);
    b.add(Layer{spread});
    b.add(flip_t);
    b.add(stage.uncompute);
    b.add(w.flips);
    b.add(copy);
  } else {
    auto merged = w.copies;
    merged.push_back(spread);
    const auto copy = fanouts_to_gt(merged);
    b.add(flip_t);
    b.add(copy);
    b.add(w.flips);
    b.add(stage.compute);
    b.add(marks);
    b.add(stage.uncompute);
    b.add(w.flips);
    b.add(copy);
    b.add(flip_t);
  }
  return b.build();
}

Circuit synth_qram_onehot(int n, Backend backend) {
  check_memory_size(n);
  CircuitBuilder b;
  const Register a = b.add_register("a", Role::Address, log2_exact(n));
  const Register t = b.add_register("t", Role::Target, 1);
  const Register mem = b.add_register("m", Role::Memory, n);
  const Register e = b.add_register("e", Role::Ancilla, n);
  const AddressDecoder d = decode_address(b, a, e, n);
  const auto stage = detail::and_stage(d.ands, backend, b, "and_");
  const Register cat = b.add_register("tcat", Role::Ancilla, n);
  const gate::FanOut spread{t[0], cat.qubits()};
  Layer reads;
  for (int j = 0; j < n; ++j) reads.push_back(gate::ControlledZ{{e[j], mem[j]}, cat[j], 1.0});
  const Layer flip_t = {gate::H{t[0]}};

  if (backend == Backend::FanOut) {
    const Layer copy = as_layer(d.copies);
    b.add(copy);
    b.add(d.flips);
    b.add(stage.compute);
    b.add(flip_t);
    b.add(Layer{spread});
    b.add(reads);
    b.add(Layer{spread});
    b.add(flip_t);
    b.add(stage.uncompute);
    b.add(d.flips);
    b.add(copy);
  } else {
    auto merged = d.copies;
    merged.push_back(spread);
    const auto copy = fanouts_to_gt(merged);
    b.add(flip_t);
    b.add(copy);
    b.add(d.flips);
    b.add(stage.compute);
    b.add(reads);
    b.add(stage.uncompute);
    b.add(d.flips);
    b.add(copy);
    b.add(flip_t);
  }
  return b.build();
}

Circuit synth_qrag_onehot(int n, Backend backend) {
  check_memory_size(n);
  CircuitBuilder b;
  const Register a = b.add_register("a", Role::Address, log2_exact(n));
  const Register t = b.add_register("t", Role::Target, 1);
  const Register mem = b.add_register("m", Role::Memory, n);
  const Register e = b.add_register("e", Role::Ancilla, n);
  const AddressDecoder d = decode_address(b, a, e, n);
  const auto stage = detail::and_stage(d.ands, backend, b, "and_");
  const Register bus = b.add_register("b", Role::Ancilla, n);
  const Register check = b.add_register("c", Role::Ancilla, n);
  const gate::FanOut to_bus{t[0], bus.qubits()};
  const gate::FanOut to_check{t[0], check.qubits()};

  Layer exchange, restore, clear;
  for (int j = 0; j < n; ++j) {
    exchange.push_back(gate::ControlledSwap{e[j], bus[j], mem[j]});
    restore.push_back(gate::MultiControlledX{{e[j], mem[j]}, bus[j]});
    clear.push_back(gate::MultiControlledX{{e[j], check[j]}, bus[j]});
  }
  auto single = [&](std::vector<gate::FanOut> fanouts) -> std::vector<Layer> {
    if (backend == Backend::FanOut) return {as_layer(fanouts)};
    return fanouts_to_gt(fanouts);
  };
  auto opening = d.copies;
  opening.push_back(to_bus);
  auto closing = d.copies;
  closing.push_back(to_check);

  b.add(single(opening));
  b.add(d.flips);
  b.add(stage.compute);
  b.add(exchange);
  b.add(single({to_bus}));
  if (backend == Backend::FanOut) {
    b.add(fanout_to_parity(to_bus));
  } else {
    gate::GlobalTunable parity;
    for (int j = 0; j < n; ++j) parity.add(bus[j], t[0], 1.0);
    b.add(Layer{gate::H{t[0]}});
    b.add(Layer{parity});
    b.add(Layer{gate::H{t[0]}});
  }
  b.add(restore);
  b.add(single({to_check}));
  b.add(clear);
  b.add(stage.uncompute);
  b.add(d.flips);
  b.add(single(closing));
  return b.build();
}

Prediction predict_ucg_onehot(const OneHotPlan& plan, Backend backend) {
  const int base = copy_qubits(plan) + plan.m;  // copies and E
  if (backend == Backend::FanOut) {
    return {2 * copy_fanout_count(plan) + 6, 0, base + plan.m,
            "fanouts 2*(#copied variables) + 6; ancillae copies + 2m"};
  }
  return {0, 5 + and_stage_gts(plan), base + and_ancillae(plan),
          "gts 9 (5 without block ANDs); ancillae copies + m + AND workspace"};
}

Prediction predict_fin_onehot(const OneHotPlan& plan, Backend backend) {
  if (plan.m == 0) return {0, 0, 0, "f = 0: empty circuit"};
  const int base = copy_qubits(plan) + 2 * plan.m;  // copies, E and the target cat state
  if (backend == Backend::FanOut) {
    return {2 * copy_fanout_count(plan) + 2, 0, base, "fanouts 2*(#copied variables) + 2; ancillae copies + 2m"};
  }
  return {0, 2 + and_stage_gts(plan), base + and_ancillae(plan),
          "gts 6 (2 without block ANDs); ancillae copies + 2m + AND workspace"};
}

Prediction predict_qram_onehot(int n, Backend backend) {
  check_memory_size(n);
  const int logn = log2_exact(n);
  const int base = (n - 1) * logn + 2 * n;
  if (backend == Backend::FanOut) return {2 * logn + 2, 0, base, "fanouts 2 log n + 2; ancillae (n-1) log n + 2n"};
  return {0, 6, base + n * gt_and_ancillae(logn), "gts 6; ancillae (n-1) log n + 2n + AND workspace"};
}

Prediction predict_qrag_onehot(int n, Backend backend) {
  check_memory_size(n);
  const int logn = log2_exact(n);
  const int base = (n - 1) * logn + 3 * n;
  if (backend == Backend::FanOut) return {2 * logn + 5, 0, base, "fanouts 2 log n + 5; ancillae (n-1) log n + 3n"};
  return {0, 9, base + n * gt_and_ancillae(logn), "gts 9; ancillae (n-1) log n + 3n + AND workspace"};
}

}  // namespace cdsynth

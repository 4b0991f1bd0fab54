#include "cdsynth/rewrites.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "cdsynth/error.hpp"

namespace cdsynth {

const char* backend_name(Backend b) { return b == Backend::FanOut ? "fanout" : "gt"; }

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "fanout") return Backend::FanOut;
  if (name == "gt") return Backend::GlobalTunable;
  return std::nullopt;
}

std::vector<Layer> zip_layers(const std::vector<std::vector<Layer>>& sequences) {
  std::size_t depth = 0;
  for (const auto& s : sequences) depth = std::max(depth, s.size());
  std::vector<Layer> out(depth);
  for (const auto& s : sequences) {
    for (std::size_t k = 0; k < s.size(); ++k) out[k].insert(out[k].end(), s[k].begin(), s[k].end());
  }
  return out;
}

std::vector<Layer> fanout_to_parity(const gate::FanOut& g) {
  std::vector<Qubit> touched{g.control};
  touched.insert(touched.end(), g.targets.begin(), g.targets.end());
  return {hadamards(touched), Layer{g}, hadamards(touched)};
}

std::vector<Layer> parity_layers(std::span<const Qubit> inputs, Qubit target) {
  return fanout_to_parity(gate::FanOut{target, std::vector<Qubit>(inputs.begin(), inputs.end())});
}

std::vector<Layer> fanout_cascade_layers(Qubit source, std::span<const Qubit> targets, int max_arity) {
  if (max_arity < 2) throw Error("fan-out cascade needs arity at least 2");
  std::vector<Qubit> holders{source};
  std::deque<Qubit> pending(targets.begin(), targets.end());
  std::vector<Layer> layers;
  while (!pending.empty()) {
    Layer layer;
    std::vector<Qubit> fresh;
    for (Qubit h : holders) {
      if (pending.empty()) break;
      gate::FanOut fo{h, {}};
      while (!pending.empty() && static_cast<int>(fo.targets.size()) < max_arity - 1) {
        fo.targets.push_back(pending.front());
        pending.pop_front();
      }
      fresh.insert(fresh.end(), fo.targets.begin(), fo.targets.end());
      layer.push_back(std::move(fo));
    }
    holders.insert(holders.end(), fresh.begin(), fresh.end());
    layers.push_back(std::move(layer));
  }
  return layers;
}

Circuit fanout_cascade(int n, int max_arity) {
  if (n < 1) throw Error("fan-out cascade needs at least one target");
  CircuitBuilder b;
  const Register source = b.add_register("source", Role::Input, 1);
  const Register copies = b.add_register("copies", Role::Target, n);
  const auto targets = copies.qubits();
  b.add(fanout_cascade_layers(source[0], targets, max_arity));
  return b.build();
}

std::vector<Layer> fanouts_to_gt(std::span<const gate::FanOut> fanouts) {
  std::set<Qubit> controls;
  std::set<Qubit> targets;
  std::map<std::pair<Qubit, Qubit>, int> parity;
  std::vector<std::pair<Qubit, Qubit>> order;
  for (const auto& fo : fanouts) {
    controls.insert(fo.control);
    for (Qubit t : fo.targets) {
      targets.insert(t);
      const auto key = std::make_pair(fo.control, t);
      if (parity.find(key) == parity.end()) order.push_back(key);
      parity[key] ^= 1;
    }
  }
  for (Qubit c : controls) {
    if (targets.count(c)) throw Error("fan-out controls overlap fan-out targets");
  }
  gate::GlobalTunable gt;
  for (const auto& key : order) {
    if (parity[key]) gt.add(key.first, key.second, 1.0);
  }
  const std::vector<Qubit> hq(targets.begin(), targets.end());
  Layer middle;
  if (!gt.empty()) middle.push_back(std::move(gt));
  return {hadamards(hq), std::move(middle), hadamards(hq)};
}

int or_reduction_width(int n) {
  int p = 0;
  while ((1 << p) < n + 1) ++p;
  return p;
}

double or_reduction_angle(int k) { return std::ldexp(1.0, -k); }

std::vector<Layer> or_reduction(std::span<const Qubit> inputs, std::span<const Qubit> out, Backend backend,
                                AncillaPool& pool) {
  const int n = static_cast<int>(inputs.size());
  const int p = or_reduction_width(n);
  if (n < 1) throw Error("OR reduction needs at least one input");
  if (static_cast<int>(out.size()) != p) throw Error("OR reduction output register has the wrong width");
  const std::vector<Qubit> outq(out.begin(), out.end());

  if (backend == Backend::GlobalTunable) {
    gate::GlobalTunable gt;
    for (int k = 0; k < p; ++k) {
      for (int i = 0; i < n; ++i) gt.add(inputs[i], out[k], or_reduction_angle(k));
    }
    return {hadamards(outq), Layer{std::move(gt)}, hadamards(outq)};
  }

  // copy[k][i]: the input copy driving the k-th phase; cat[k][i]: the k-th cat state.
  const auto extra_copies = pool.acquire(n * (p - 1));
  const auto cat_tails = pool.acquire(p * (n - 1));
  auto copy = [&](int k, int i) { return k == 0 ? inputs[i] : extra_copies[(k - 1) * n + i]; };
  auto cat = [&](int k, int i) { return i == 0 ? out[k] : cat_tails[k * (n - 1) + i - 1]; };

  Layer copy_layer;
  if (p >= 2) {
    for (int i = 0; i < n; ++i) {
      gate::FanOut fo{inputs[i], {}};
      for (int k = 1; k < p; ++k) fo.targets.push_back(copy(k, i));
      copy_layer.push_back(std::move(fo));
    }
  }
  Layer cat_layer;
  if (n >= 2) {
    for (int k = 0; k < p; ++k) {
      gate::FanOut fo{out[k], {}};
      for (int i = 1; i < n; ++i) fo.targets.push_back(cat(k, i));
      cat_layer.push_back(std::move(fo));
    }
  }
  Layer phase_layer;
  for (int k = 0; k < p; ++k) {
    for (int i = 0; i < n; ++i) phase_layer.push_back(gate::ControlledZ{{copy(k, i)}, cat(k, i), or_reduction_angle(k)});
  }
  std::vector<Layer> layers;
  layers.push_back(copy_layer);
  layers.push_back(hadamards(outq));
  layers.push_back(cat_layer);
  layers.push_back(std::move(phase_layer));
  layers.push_back(cat_layer);
  layers.push_back(hadamards(outq));
  layers.push_back(copy_layer);
  std::erase_if(layers, [](const Layer& l) { return l.empty(); });
  return layers;
}

std::vector<Layer> expand_and(const gate::PrimitiveAnd& g, Backend backend, AncillaPool& pool) {
  if (g.inputs.empty()) return {Layer{gate::X{g.target}}};
  if (g.inputs.size() <= 2) return {Layer{gate::MultiControlledX{g.inputs, g.target}}};
  const int p = or_reduction_width(static_cast<int>(g.inputs.size()));
  const auto reduced = pool.acquire(p);
  const auto reduction = or_reduction(g.inputs, reduced, backend, pool);
  const auto inner = expand_and(gate::PrimitiveAnd{reduced, g.target, g.tag}, backend, pool);

  Layer flip_inputs = paulis(g.inputs);
  Layer flip_both = flip_inputs;
  for (Qubit q : reduced) flip_both.push_back(gate::X{q});

  // AND(u) = NOT OR(not u): the reduced register is all-zero exactly when every input is 1.
  std::vector<Layer> out;
  out.push_back(flip_inputs);
  out.insert(out.end(), reduction.begin(), reduction.end());
  out.push_back(flip_both);
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(flip_both);
  const auto undo = inverse(reduction);
  out.insert(out.end(), undo.begin(), undo.end());
  out.push_back(flip_inputs);
  return out;
}

Circuit expand_ands(const Circuit& c, Backend backend) {
  std::string prefix = "and_work";
  auto taken = [&](const std::string& p) {
    return std::any_of(c.registers().begin(), c.registers().end(),
                       [&](const Register& r) { return r.name.rfind(p, 0) == 0; });
  };
  for (int suffix = 1; taken(prefix); ++suffix) prefix = "and_work" + std::to_string(suffix) + "_";

  CircuitBuilder b(c);
  AncillaPool pool(b, prefix);
  for (const auto& layer : c.layers()) {
    std::vector<std::vector<Layer>> parts(1);
    parts[0].emplace_back();
    pool.reset();
    for (const auto& g : layer) {
      if (const auto* a = std::get_if<gate::PrimitiveAnd>(&g)) {
        parts.push_back(expand_and(*a, backend, pool));
      } else {
        parts[0][0].push_back(g);
      }
    }
    b.add(zip_layers(parts));
  }
  return b.build();
}

}  // namespace cdsynth

#include "and_stage.hpp"
#include "cdsynth/error.hpp"
#include "cdsynth/synth_boolean.hpp"
#include "phase_body.hpp"
#include "term_layout.hpp"

namespace cdsynth {
namespace {

// Monomial qubits over {0,1}: the variable itself for singletons, an AND of private copies otherwise.
struct AndControls {
  detail::TermControls tc;
  std::vector<gate::FanOut> copy_fanouts;
};

AndControls and_controls(CircuitBuilder& b, int n, std::span<const Qubit> vars, const TermSupport& s,
                         Backend backend) {
  AndControls out;
  auto& tc = out.tc;
  for (Mask m : s.above0) {
    if (mask_size(m) == 1) tc.control[m] = vars[mask_variables(n, m).front()];
  }
  if (s.above1.empty()) return out;
  const Register p = b.add_register("p", Role::Ancilla, static_cast<int>(s.above1.size()));
  const auto copies = detail::allocate_copies(b, n, vars, s.above1);
  std::vector<detail::AndSpec> ands;
  for (std::size_t k = 0; k < s.above1.size(); ++k) {
    const Qubit monomial = p[static_cast<int>(k)];
    tc.control[s.above1[k]] = monomial;
    ands.push_back({copies.slots.at(s.above1[k]), monomial});
  }
  auto stage = detail::and_stage(ands, backend, b, "and_");
  tc.copy = backend == Backend::FanOut ? std::vector<Layer>{Layer(copies.fanouts.begin(), copies.fanouts.end())}
                                       : fanouts_to_gt(copies.fanouts);
  tc.compute = std::move(stage.compute);
  tc.uncompute = std::move(stage.uncompute);
  out.copy_fanouts = copies.fanouts;
  return out;
}

int and_workspace(const TermSupport& s) {
  int total = 0;
  for (Mask m : s.above1) {
    const int p1 = or_reduction_width(mask_size(m));
    total += p1 + or_reduction_width(p1);
  }
  return total;
}

void check_terms(const TermSupport& s) {
  if (s.above0.size() > static_cast<std::size_t>(kMaxTerms)) {
    throw Error("polynomial has " + std::to_string(s.above0.size()) + " nonconstant terms (limit " +
                std::to_string(kMaxTerms) + ")");
  }
}

}  // namespace

ComponentPolys zero_one_components(const UnitaryFunction& f) {
  const ZTables tables = decompose_function(f);
  return {mobius_transform(tables.alpha), mobius_transform(tables.beta), mobius_transform(tables.gamma),
          mobius_transform(tables.delta)};
}

Circuit synth_ucg_zero_one(const UnitaryFunction& f, Backend backend) {
  const int n = f.arity();
  const ComponentPolys polys = zero_one_components(f);
  const TermSupport s = term_support(polys);
  check_terms(s);
  CircuitBuilder b;
  const Register x = b.add_register("x", Role::Input, n);
  const Register t = b.add_register("t", Role::Target, 1);
  const auto controls = and_controls(b, n, x.qubits(), s, backend);
  detail::ucg_phase_body(b, t[0], polys, s, controls.tc, {1.0, false}, backend);
  return b.build();
}

Circuit synth_fin_f2(const BooleanFunction& f, Backend backend) {
  const int n = f.arity();
  const SparsePolynomial anf = anf_transform(f);
  const SparsePolynomial polys[] = {anf};
  const TermSupport s = term_support(polys);
  check_terms(s);
  CircuitBuilder b;
  const Register x = b.add_register("x", Role::Input, n);
  const Register t = b.add_register("t", Role::Target, 1);
  const auto ands = and_controls(b, n, x.qubits(), s, backend);
  const auto& tc = ands.tc;
  const bool constant = anf.coefficient(0) != 0.0;
  std::vector<Qubit> monomials;
  for (Mask m : s.above0) monomials.push_back(tc.control.at(m));

  if (backend == Backend::FanOut) {
    Layer opening = tc.copy.empty() ? Layer{} : tc.copy.front();
    if (constant) opening.push_back(gate::X{t[0]});
    b.add(opening);
    b.add(tc.compute);
    if (!monomials.empty()) b.add(parity_layers(monomials, t[0]));
    b.add(tc.uncompute);
    b.add(tc.copy);
    return b.build();
  }

  if (constant) b.add(Layer{gate::X{t[0]}});
  if (monomials.empty()) return b.build();
  const Register cat = b.add_register("tcat", Role::Ancilla, static_cast<int>(monomials.size()));
  // The target cat state joins the copy Fan-Outs in one GT.
  std::vector<gate::FanOut> merged = ands.copy_fanouts;
  merged.push_back(gate::FanOut{t[0], cat.qubits()});
  Layer marks;
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    marks.push_back(gate::ControlledZ{{monomials[k]}, cat[static_cast<int>(k)], 1.0});
  }
  const auto spread = fanouts_to_gt(merged);
  b.add(Layer{gate::H{t[0]}});
  b.add(spread);
  b.add(tc.compute);
  b.add(marks);
  b.add(tc.uncompute);
  b.add(spread);
  b.add(Layer{gate::H{t[0]}});
  return b.build();
}

Prediction predict_ucg_zero_one(const TermSupport& s, Backend backend) {
  const int multi = static_cast<int>(s.above1.size());
  if (backend == Backend::FanOut) {
    return {2 * s.union_above1 + 6, 0, s.size_sum + 2 * multi, "fanouts 2|U| + 6; ancillae sum|S| + 2|supp>1|"};
  }
  const int copies = s.size_sum - (static_cast<int>(s.above0.size()) - multi);
  return {0, 3 + (multi > 0 ? 6 : 0), copies + multi + and_workspace(s),
          "gts 9 (3 without multi-variable terms); ancillae copies + |supp>1| + AND workspace"};
}

Prediction predict_fin_f2(const TermSupport& s, Backend backend) {
  const int multi = static_cast<int>(s.above1.size());
  const int copies = s.size_sum - (static_cast<int>(s.above0.size()) - multi);
  if (s.above0.empty()) return {0, 0, 0, "affine constant"};
  if (backend == Backend::FanOut) {
    return {2 * s.union_above1 + 1, 0, copies + multi, "fanouts 2|U| + 1; ancillae copies + |supp>1|"};
  }
  return {0, 2 + (multi > 0 ? 4 : 0), copies + multi + static_cast<int>(s.above0.size()) + and_workspace(s),
          "gts 6 (2 without multi-variable terms); ancillae copies + |supp>1| + |supp>0| + AND workspace"};
}

}  // namespace cdsynth

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cdsynth/onehot.hpp"
#include "cdsynth/serialize.hpp"
#include "cdsynth/simulator.hpp"
#include "cdsynth/synth_boolean.hpp"
#include "function_spec.hpp"

namespace cdsynth::cli {
namespace {

using nlohmann::ordered_json;

struct AnalyzeArgs {
  std::string fn;
  std::string junta;
};

struct CompileArgs {
  std::string fn;
  std::string construction;
  std::string backend = "fanout";
  double eps = 0.1;
  std::uint64_t seed = 1;
  bool expand_and = false;
  std::string out;
  std::string junta;
};

struct VerifyArgs {
  std::string circuit;
  std::string fn;
  std::string mode = "basis";
  int count = 64;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

struct SimulateArgs {
  std::string circuit;
  std::string input;
  std::optional<int> layer;
  bool no_fuse = false;
};

int arity_of(const FunctionSpec& spec) {
  return std::visit(
      [](const auto& f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, MemorySpec>) {
          return f.n + log2_exact(f.n);
        } else {
          return f.arity();
        }
      },
      spec);
}

ordered_json variables_json(int n, Mask s) { return mask_variables(n, s); }

ordered_json support_json(const SparsePolynomial& p) {
  const auto stats = support_stats(p, 1);
  ordered_json terms = ordered_json::array();
  for (const auto& [s, c] : p.terms()) terms.push_back({{"set", variables_json(p.arity(), s)}, {"coefficient", c}});
  return {{"support_size", stats.support.size()},
          {"support_above_1", stats.support_above.size()},
          {"degree", stats.degree},
          {"one_norm", stats.one_norm},
          {"terms", std::move(terms)}};
}

ordered_json junta_json(const JuntaStructure& js) {
  ordered_json per = ordered_json::array();
  for (Mask m : js.per_restriction) per.push_back(variables_json(js.n, m));
  return {{"J", variables_json(js.n, js.J)}, {"t", js.t}, {"r", js.r}, {"per_restriction", std::move(per)}};
}

ordered_json real_analysis(const RealFunction& f) {
  return {{"fourier", support_json(fourier_transform(f))}, {"zero_one", support_json(mobius_transform(f))}};
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const FunctionSpec spec = parse_function_spec(a.fn);
  const int n = arity_of(spec);
  ordered_json report{{"function", a.fn}, {"arity", n}};
  std::optional<JuntaStructure> junta;
  std::optional<Mask> J;
  if (!a.junta.empty()) J = parse_junta_set(a.junta, n, spec);

  if (const auto* memory = std::get_if<MemorySpec>(&spec)) {
    if (memory->kind == MemorySpec::Kind::Qrag) throw UsageError("qrag is not a function table; analyze builtin:qram instead");
    const BooleanFunction sel = selection_function(memory->n);
    report["kind"] = "qram";
    report.update(real_analysis(sel.to_real()));
    report["anf"] = support_json(anf_transform(sel));
    if (J) junta = junta_structure(sel.to_real(), *J);
  } else if (const auto* b = std::get_if<BooleanFunction>(&spec)) {
    report["kind"] = "boolean";
    report.update(real_analysis(b->to_real()));
    report["anf"] = support_json(anf_transform(*b));
    if (J) junta = junta_structure(b->to_real(), *J);
  } else if (const auto* r = std::get_if<RealFunction>(&spec)) {
    report["kind"] = "real";
    report.update(real_analysis(*r));
    if (J) junta = junta_structure(*r, *J);
  } else {
    const auto& u = std::get<UnitaryFunction>(spec);
    report["kind"] = "unitary";
    const auto polys = fourier_components(u);
    static constexpr const char* kNames[] = {"alpha", "beta", "gamma", "delta"};
    ordered_json components;
    for (int c = 0; c < 4; ++c) components[kNames[c]] = support_json(polys[c]);
    report["components"] = std::move(components);
    const auto s = term_support(polys);
    report["combined"] = {{"support_above_0", s.above0.size()},
                          {"support_above_1", s.above1.size()},
                          {"union_above_1", s.union_above1},
                          {"size_sum", s.size_sum}};
    if (J) junta = junta_structure(u, *J);
  }
  if (junta) report["junta"] = junta_json(*junta);
  out << report.dump(2) << '\n';
  return kExitPass;
}

ordered_json resources_json(const ResourceReport& r) {
  return {{"fanout_count", r.fanout_count},
          {"gt_count", r.gt_count},
          {"and_count", r.and_count},
          {"max_fanout_arity", r.max_fanout_arity},
          {"max_gt_arity", r.max_gt_arity},
          {"max_and_arity", r.max_and_arity},
          {"single_and_two_qubit_count", r.single_and_two_qubit_count},
          {"other_gate_count", r.other_gate_count},
          {"ancilla_count", r.ancilla_count},
          {"total_qubits", r.total_qubits},
          {"depth", r.depth}};
}

ordered_json prediction_json(const Prediction& p, const ResourceReport& measured, Backend backend) {
  ordered_json j{{"formula", p.formula}};
  bool matches = true;
  auto field = [&](const char* name, const std::optional<int>& want, int got) {
    if (!want) return;
    j[name] = *want;
    matches = matches && *want == got;
  };
  if (backend == Backend::FanOut) field("fanout_count", p.fanouts, measured.fanout_count);
  if (backend == Backend::GlobalTunable) field("gt_count", p.gts, measured.gt_count);
  field("ancilla_count", p.ancillae, measured.ancilla_count);
  j["matches"] = matches;
  return j;
}

struct Compiled {
  Circuit circuit;
  Prediction prediction;
};

Mask junta_or_default(const CompileArgs& a, const FunctionSpec& spec, Mask fallback) {
  return a.junta.empty() ? fallback : parse_junta_set(a.junta, arity_of(spec), spec);
}

Compiled compile_boolean(const BooleanFunction& f, const CompileArgs& a, const FunctionSpec& spec, Backend backend) {
  const std::string& c = a.construction;
  if (c == "onehot") {
    const Mask J = junta_or_default(a, spec, choose_junta_set(f));
    return {synth_fin_onehot(f, J, backend), predict_fin_onehot(plan_fin_onehot(f, J), backend)};
  }
  if (c == "fourier") {
    const SparsePolynomial gamma = fourier_transform(f.to_real());
    return {synth_fin_fourier(f, backend), predict_fin_fourier(term_support(std::span(&gamma, 1)), backend)};
  }
  if (c == "fourier-approx") {
    Prediction p;
    p.formula = "gts 2 for nonconstant f; other counts depend on the sampled tail";
    if (backend == Backend::GlobalTunable && fourier_transform(f.to_real()).size() > 1) p.gts = 2;
    return {synth_fin_fourier_approx(f, a.eps, backend, a.seed), p};
  }
  if (c == "f2") {
    const SparsePolynomial anf = anf_transform(f);
    return {synth_fin_f2(f, backend), predict_fin_f2(term_support(std::span(&anf, 1)), backend)};
  }
  if (c == "zero-one") {
    const auto u = UnitaryFunction::from_boolean(f);
    return {synth_ucg_zero_one(u, backend), predict_ucg_zero_one(term_support(zero_one_components(u)), backend)};
  }
  throw UsageError("unknown construction '" + c + "'");
}

Compiled compile_unitary(const UnitaryFunction& f, const CompileArgs& a, const FunctionSpec& spec, Backend backend) {
  const std::string& c = a.construction;
  if (c == "onehot") {
    const Mask J = junta_or_default(a, spec, choose_junta_set(f));
    return {synth_ucg_onehot(f, J, backend), predict_ucg_onehot(plan_onehot(junta_structure(f, J)), backend)};
  }
  if (c == "fourier") {
    return {synth_ucg_fourier(f, backend), predict_ucg_fourier(term_support(fourier_components(f)), backend)};
  }
  if (c == "fourier-approx") {
    const auto polys = approx_fourier_components(f, ucg_component_tolerance(a.eps), a.seed);
    return {synth_ucg_fourier_approx(f, a.eps, backend, a.seed), predict_ucg_fourier(term_support(polys), backend)};
  }
  if (c == "zero-one") {
    return {synth_ucg_zero_one(f, backend), predict_ucg_zero_one(term_support(zero_one_components(f)), backend)};
  }
  if (c == "f2") throw UsageError("construction f2 needs a Boolean function");
  throw UsageError("unknown construction '" + c + "'");
}

Compiled compile_memory(const MemorySpec& m, const CompileArgs& a, Backend backend) {
  const bool qram = m.kind == MemorySpec::Kind::Qram;
  if (a.construction == "onehot") {
    return qram ? Compiled{synth_qram_onehot(m.n, backend), predict_qram_onehot(m.n, backend)}
                : Compiled{synth_qrag_onehot(m.n, backend), predict_qrag_onehot(m.n, backend)};
  }
  if (qram && a.construction == "fourier") {
    const SparsePolynomial p = qram_fourier_coefficients(m.n);
    return {synth_qram_fourier(m.n, backend), predict_fin_fourier(term_support(std::span(&p, 1)), backend)};
  }
  throw UsageError("construction '" + a.construction + "' is not available for " + (qram ? "qram" : "qrag"));
}

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  const FunctionSpec spec = parse_function_spec(a.fn);
  const auto backend = parse_backend(a.backend);
  if (!backend) throw UsageError("backend must be fanout or gt");

  Compiled compiled = std::visit(
      [&](const auto& f) -> Compiled {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, BooleanFunction>) return compile_boolean(f, a, spec, *backend);
        else if constexpr (std::is_same_v<T, UnitaryFunction>) return compile_unitary(f, a, spec, *backend);
        else if constexpr (std::is_same_v<T, MemorySpec>) return compile_memory(f, a, *backend);
        else throw UsageError("real-valued tables can be analyzed but not compiled");
      },
      spec);

  const ResourceReport before = resources(compiled.circuit);
  ordered_json report{{"function", a.fn}, {"construction", a.construction}, {"backend", backend_name(*backend)}};
  report["expand_and"] = a.expand_and;
  if (a.expand_and) {
    compiled.circuit = expand_ands(compiled.circuit, *backend);
    report["resources"] = resources_json(resources(compiled.circuit));
    report["resources_with_primitive_and"] = resources_json(before);
  } else {
    report["resources"] = resources_json(before);
    const auto cost = estimate_and_cost(compiled.circuit);
    if (before.and_count > 0) {
      report["and_expansion_estimate"] = {{"fanout_gates", cost.fanout_gates},
                                          {"fanout_ancillae", cost.fanout_ancillae},
                                          {"gt_gates", cost.gt_gates},
                                          {"gt_ancillae", cost.gt_ancillae}};
    }
  }
  report["prediction"] = prediction_json(compiled.prediction, before, *backend);

  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw UsageError("cannot write '" + a.out + "'");
    file << serialize(compiled.circuit);
    report["out"] = a.out;
  }
  out << report.dump(2) << '\n';
  return kExitPass;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

ExpectedMap expected_for(const FunctionSpec& spec) {
  if (const auto* m = std::get_if<MemorySpec>(&spec)) {
    return m->kind == MemorySpec::Kind::Qram ? expected_qram(m->n) : expected_qrag(m->n);
  }
  if (const auto* b = std::get_if<BooleanFunction>(&spec)) return expected_fin(*b);
  if (const auto* u = std::get_if<UnitaryFunction>(&spec)) return expected_ucg(*u);
  throw UsageError("real-valued tables have no circuit semantics");
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const FunctionSpec spec = parse_function_spec(a.fn);
  const Circuit c = load_circuit(a.circuit);
  const ExpectedMap expected = expected_for(spec);
  if (logical_width(c) != expected.width) {
    throw UsageError("register shape mismatch: circuit has " + std::to_string(logical_width(c)) +
                     " logical qubits, the function needs " + std::to_string(expected.width));
  }
  if (a.mode != "basis" && a.mode != "superposition") throw UsageError("mode must be basis or superposition");

  ordered_json report{{"circuit", a.circuit}, {"function", a.fn}, {"mode", a.mode}, {"tolerance", a.tol}};
  bool passed = false;
  const auto* u = std::get_if<UnitaryFunction>(&spec);
  if (u && a.mode == "basis") {
    // Spectral distance per input block, the metric of the approximation guarantee.
    const auto measured = measure_ucg(c);
    const double deviation = max_spectral_deviation(measured, *u);
    passed = deviation <= a.tol && measured.max_leakage <= kNormTolerance;
    report["metric"] = "spectral";
    report["max_deviation"] = deviation;
    report["max_leakage"] = measured.max_leakage;
    report["inputs"] = measured.blocks.size();
  } else {
    VerifyOptions options;
    options.mode = a.mode == "basis" ? VerifyMode::BasisSweep : VerifyMode::RandomSuperpositions;
    options.seed = a.seed;
    options.count = a.count;
    const auto r = verify_map(c, expected, options);
    passed = r.passed(a.tol);
    report["metric"] = "l2";
    report["max_deviation"] = r.max_deviation;
    report["ancillae_clean"] = r.ancillae_clean;
    report["max_ancilla_mass"] = r.max_ancilla_mass;
    report["inputs"] = r.inputs;
    report["max_support"] = r.max_support;
  }
  report["passed"] = passed;
  out << report.dump(2) << '\n';
  return passed ? kExitPass : kExitVerifyFailed;
}

std::string format_bits(const BasisKey& key, const std::vector<Qubit>& qubits) {
  std::string bits;
  bits.reserve(qubits.size());
  for (Qubit q : qubits) bits.push_back(key_bit(key, q) ? '1' : '0');
  return bits;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Circuit c = load_circuit(a.circuit);
  const auto logical = c.logical_qubits();
  if (a.input.size() != logical.size() || a.input.find_first_not_of("01") != std::string::npos) {
    throw UsageError("input must be " + std::to_string(logical.size()) + " characters of 0/1");
  }
  if (a.layer && (*a.layer < 0 || *a.layer > static_cast<int>(c.layers().size()))) {
    throw UsageError("layer must lie in [0, " + std::to_string(c.layers().size()) + "]");
  }
  BasisKey key{};
  for (std::size_t i = 0; i < logical.size(); ++i) set_bit(key, logical[i], a.input[i] == '1');

  SimulationOptions options;
  options.fuse = !a.no_fuse;
  options.stop_after = a.layer;
  const auto result = simulate(c, SparseState(c.num_qubits(), {{key, 1.0}}), options);

  std::vector<Qubit> ancillae;
  const auto mask = c.ancilla_mask();
  for (Qubit q = 0; q < c.num_qubits(); ++q) {
    if (mask[static_cast<std::size_t>(q)]) ancillae.push_back(q);
  }
  std::vector<std::pair<std::string, Complex>> rows;
  for (const auto& amp : result.state.amplitudes()) {
    std::string label = format_bits(amp.key, logical);
    if (!ancillae.empty()) label += " " + format_bits(amp.key, ancillae);
    rows.emplace_back(std::move(label), amp.value);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out << "# logical" << (ancillae.empty() ? "" : " ancilla") << " amplitude, after "
      << result.support_after_layer.size() << " layers\n";
  out << std::fixed << std::setprecision(9);
  auto clean = [](double v) { return std::fabs(v) < 5e-10 ? 0.0 : v; };
  for (const auto& [label, value] : rows) out << label << ' ' << clean(value.real()) << ' ' << clean(value.imag()) << '\n';
  return kExitPass;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-depth circuit synthesis over Fan-Out and global tunable gates", "cdsynth"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Boolean-analysis report for a function");
  an->add_option("--fn", analyze.fn, "function spec")->required();
  an->add_option("--junta-J", analyze.junta, "variable set J: all, none, data or i,j,...");

  CompileArgs compile;
  auto* co = app.add_subcommand("compile", "Synthesize a circuit and report its resources");
  co->add_option("--fn", compile.fn, "function spec")->required();
  co->add_option("--construction", compile.construction, "construction")
      ->required()
      ->check(CLI::IsMember({"onehot", "fourier", "fourier-approx", "zero-one", "f2"}));
  co->add_option("--backend", compile.backend, "fanout or gt")->check(CLI::IsMember({"fanout", "gt"}));
  co->add_option("--eps", compile.eps, "approximation error for fourier-approx")->check(CLI::PositiveNumber);
  co->add_option("--seed", compile.seed, "sampling seed");
  co->add_flag("--expand-and", compile.expand_and, "replace primitive ANDs by backend gates");
  co->add_option("--out", compile.out, "circuit output file");
  co->add_option("--junta-J", compile.junta, "variable set J for onehot");

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "Check a circuit file against a function by simulation");
  ve->add_option("--circuit", verify.circuit, "circuit file")->required();
  ve->add_option("--fn", verify.fn, "function spec")->required();
  ve->add_option("--mode", verify.mode, "basis or superposition")->check(CLI::IsMember({"basis", "superposition"}));
  ve->add_option("--count", verify.count, "random superposition inputs")->check(CLI::PositiveNumber);
  ve->add_option("--seed", verify.seed, "superposition seed");
  ve->add_option("--tol", verify.tol, "deviation tolerance")->check(CLI::NonNegativeNumber);

  SimulateArgs simulate_args;
  auto* si = app.add_subcommand("simulate", "Run a circuit on one basis input");
  si->add_option("--circuit", simulate_args.circuit, "circuit file")->required();
  si->add_option("--input", simulate_args.input, "logical input bits, most significant first")->required();
  si->add_option("--layer", simulate_args.layer, "stop after this many layers");
  si->add_flag("--no-fuse", simulate_args.no_fuse, "apply layers one by one");

  std::vector<const char*> argv{"cdsynth"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (an->parsed()) return cmd_analyze(analyze, out);
    if (co->parsed()) return cmd_compile(compile, out);
    if (ve->parsed()) return cmd_verify(verify, out);
    return cmd_simulate(simulate_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cdsynth::cli

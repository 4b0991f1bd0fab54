#include "cdsynth/serialize.hpp"

#include <sstream>

#include "cdsynth/error.hpp"
#include "json.hpp"

namespace cdsynth {
namespace {

using nlohmann::json;

json gate_to_json(const Gate& g) {
  return std::visit(
      [](const auto& op) -> json {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, gate::H>) {
          return {{"g", "H"}, {"q", op.q}};
        } else if constexpr (std::is_same_v<T, gate::X>) {
          return {{"g", "X"}, {"q", op.q}};
        } else if constexpr (std::is_same_v<T, gate::Phase>) {
          return {{"g", "Z"}, {"q", op.q}, {"theta", op.theta}};
        } else if constexpr (std::is_same_v<T, gate::GlobalPhase>) {
          return {{"g", "GPHASE"}, {"theta", op.theta}};
        } else if constexpr (std::is_same_v<T, gate::ControlledZ>) {
          return {{"g", "CZ"}, {"c", op.controls}, {"t", op.target}, {"theta", op.theta}};
        } else if constexpr (std::is_same_v<T, gate::ControlledU>) {
          json u = json::array();
          for (const auto& z : op.u.entries()) {
            u.push_back(z.real());
            u.push_back(z.imag());
          }
          return {{"g", "CU"}, {"c", op.control}, {"t", op.target}, {"u", u}};
        } else if constexpr (std::is_same_v<T, gate::FanOut>) {
          return {{"g", "FO"}, {"c", op.control}, {"t", op.targets}};
        } else if constexpr (std::is_same_v<T, gate::GlobalTunable>) {
          json triples = json::array();
          for (const auto& cp : op.couplings()) triples.push_back(json::array({cp.control, cp.target, cp.theta}));
          return {{"g", "GT"}, {"triples", triples}};
        } else if constexpr (std::is_same_v<T, gate::PrimitiveAnd>) {
          json j = {{"g", "AND"}, {"in", op.inputs}, {"t", op.target}};
          if (op.tag >= 0) j["tag"] = op.tag;
          return j;
        } else if constexpr (std::is_same_v<T, gate::Swap>) {
          return {{"g", "SWAP"}, {"a", op.a}, {"b", op.b}};
        } else if constexpr (std::is_same_v<T, gate::ControlledSwap>) {
          return {{"g", "CSWAP"}, {"c", op.control}, {"a", op.a}, {"b", op.b}};
        } else {
          return {{"g", "MCX"}, {"c", op.controls}, {"t", op.target}};
        }
      },
      g);
}

Gate gate_from_json(const json& j) {
  if (!j.is_object()) throw Error("gate entry is not an object");
  if (!j.contains("g") || !j["g"].is_string()) throw Error("gate entry lacks a string field 'g'");
  const std::string tag = j["g"].get<std::string>();
  auto qubit = [&](const char* key) { return j.at(key).get<Qubit>(); };
  auto qubits = [&](const char* key) { return j.at(key).get<std::vector<Qubit>>(); };
  auto angle = [&] { return reduce_angle(j.at("theta").get<double>()); };

  if (tag == "H") return gate::H{qubit("q")};
  if (tag == "X") return gate::X{qubit("q")};
  if (tag == "Z") return gate::Phase{qubit("q"), angle()};
  if (tag == "GPHASE") return gate::GlobalPhase{angle()};
  if (tag == "CZ") return gate::ControlledZ{qubits("c"), qubit("t"), angle()};
  if (tag == "CU") {
    const auto v = j.at("u").get<std::vector<double>>();
    if (v.size() != 8) throw Error("CU needs eight reals");
    return gate::ControlledU{qubit("c"), qubit("t"),
                             Unitary2({Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7])})};
  }
  if (tag == "FO") return gate::FanOut{qubit("c"), qubits("t")};
  if (tag == "GT") {
    gate::GlobalTunable gt;
    for (const auto& t : j.at("triples")) {
      if (!t.is_array() || t.size() != 3) throw Error("GT triple must be [control, target, theta]");
      gt.add(t[0].get<Qubit>(), t[1].get<Qubit>(), t[2].get<double>());
    }
    return gt;
  }
  if (tag == "AND") return gate::PrimitiveAnd{qubits("in"), qubit("t"), j.value("tag", -1)};
  if (tag == "SWAP") return gate::Swap{qubit("a"), qubit("b")};
  if (tag == "CSWAP") return gate::ControlledSwap{qubit("c"), qubit("a"), qubit("b")};
  if (tag == "MCX") return gate::MultiControlledX{qubits("c"), qubit("t")};
  throw Error("unknown gate tag '" + tag + "'");
}

}  // namespace

std::string serialize(const Circuit& c) {
  json regs = json::array();
  for (const auto& r : c.registers()) {
    regs.push_back({{"name", r.name}, {"role", role_name(r.role)}, {"start", r.start}, {"len", r.length}});
  }
  std::string out = json{{"version", kCircuitFormatVersion}, {"registers", regs}}.dump();
  out += '\n';
  for (const auto& layer : c.layers()) {
    json arr = json::array();
    for (const auto& g : layer) arr.push_back(gate_to_json(g));
    out += arr.dump();
    out += '\n';
  }
  return out;
}

Circuit deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<Register> registers;
  std::vector<Layer> layers;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no, static_cast<int>(e.byte));
    }
    if (!have_header) {
      try {
        if (!j.is_object()) throw Error("header must be a JSON object");
        const int version = j.at("version").get<int>();
        if (version != kCircuitFormatVersion) throw Error("unsupported version " + std::to_string(version));
        for (const auto& r : j.at("registers")) {
          const auto role = parse_role(r.at("role").get<std::string>());
          if (!role) throw Error("unknown role '" + r.at("role").get<std::string>() + "'");
          registers.push_back(Register{r.at("name").get<std::string>(), *role, r.at("start").get<int>(),
                                       r.at("len").get<int>()});
        }
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("bad header: ") + e.what(), line_no, 0);
      }
      have_header = true;
      continue;
    }
    if (!j.is_array()) throw ParseError("layer line must be a JSON array", line_no, 0);
    Layer layer;
    for (std::size_t k = 0; k < j.size(); ++k) {
      try {
        layer.push_back(gate_from_json(j[k]));
      } catch (const std::exception& e) {
        throw ParseError("gate " + std::to_string(k) + ": " + e.what(), line_no, 0);
      }
    }
    layers.push_back(std::move(layer));
  }
  if (!have_header) throw ParseError("missing header line", line_no == 0 ? 1 : line_no, 0);
  try {
    return Circuit(std::move(registers), std::move(layers));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 0);
  }
}

}  // namespace cdsynth

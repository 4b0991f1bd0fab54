#include "function_spec.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace cdsynth::cli {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

int to_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("expected an integer " + std::string(what) + ", got '" + std::string(text) + "'");
  }
  return value;
}

std::string read_file(std::string_view path) {
  std::ifstream in{std::string(path)};
  if (!in) throw UsageError("cannot open '" + std::string(path) + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FunctionSpec parse_builtin(std::string_view rest) {
  const auto parts = split(rest, ':');
  const std::string_view name = parts[0];
  const bool weighted = name == "exact" || name == "threshold";
  const std::size_t want = weighted ? 3 : 2;
  if (parts.size() != want) {
    throw UsageError(weighted ? "expected builtin:" + std::string(name) + ":<t>:<n>"
                              : "expected builtin:" + std::string(name) + ":<n>");
  }
  const int n = to_int(parts.back(), "arity");
  if (n < 1) throw UsageError("arity must be positive");
  if (name == "and") return and_function(n);
  if (name == "or") return or_function(n);
  if (name == "parity") return parity_function(n);
  if (name == "majority") return majority_function(n);
  if (name == "exact") return exact_function(n, to_int(parts[1], "weight"));
  if (name == "threshold") return threshold_function(n, to_int(parts[1], "weight"));
  if (name == "qram" || name == "qrag") {
    if (n < 2 || (n & (n - 1)) != 0) throw UsageError("memory size must be a power of two, at least 2");
    return MemorySpec{name == "qram" ? MemorySpec::Kind::Qram : MemorySpec::Kind::Qrag, n};
  }
  throw UsageError("unknown builtin '" + std::string(name) + "'");
}

}  // namespace

FunctionSpec parse_function_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("function spec needs a builtin:, file: or ufile: prefix");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "builtin") return parse_builtin(rest);
  if (kind == "file") {
    auto table = parse_truth_table(read_file(rest));
    return std::visit([](auto&& f) -> FunctionSpec { return std::move(f); }, std::move(table));
  }
  if (kind == "ufile") return parse_unitary_function(read_file(rest));
  throw UsageError("unknown function spec prefix '" + std::string(kind) + "'");
}

Mask parse_junta_set(std::string_view text, int arity, const FunctionSpec& spec) {
  if (text == "all") return (Mask{1} << arity) - 1;
  if (text == "none") return 0;
  if (text == "data") {
    const auto* memory = std::get_if<MemorySpec>(&spec);
    if (!memory) throw UsageError("--junta-J data applies to memory specs only");
    Mask J = 0;
    for (int i = 0; i < memory->n; ++i) J |= variable_bit(arity, i);
    return J;
  }
  Mask J = 0;
  for (auto item : split(text, ',')) {
    const int i = to_int(item, "variable index");
    if (i < 0 || i >= arity) throw UsageError("variable index " + std::to_string(i) + " out of range");
    J |= variable_bit(arity, i);
  }
  return J;
}

}  // namespace cdsynth::cli

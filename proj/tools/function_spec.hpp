#pragma once

// Function specs accepted on the command line:
//   builtin:<name>:<n>        name in {and, or, parity, majority, qram, qrag}
//   builtin:exact:<t>:<n>     builtin:threshold:<t>:<n>
//   file:<path>               truth table (Boolean or real)
//   ufile:<path>              unitary function table

#include <string>
#include <string_view>
#include <variant>

#include "cdsynth/boolean.hpp"
#include "cdsynth/error.hpp"
#include "cdsynth/unitary.hpp"

namespace cdsynth::cli {

struct MemorySpec {
  enum class Kind { Qram, Qrag } kind;
  int n;
};

using FunctionSpec = std::variant<BooleanFunction, RealFunction, UnitaryFunction, MemorySpec>;

// Throws UsageError for malformed specs and ParseError (with file line numbers) for bad files.
FunctionSpec parse_function_spec(std::string_view text);

// Variable mask for --junta-J: "all", "none", "data" (memory specs: the n data bits), or a
// comma-separated list of variable indices.
Mask parse_junta_set(std::string_view text, int arity, const FunctionSpec& spec);

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdsynth::cli

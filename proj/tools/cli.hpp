#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace cdsynth::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cdsynth::cli

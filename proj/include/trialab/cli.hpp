#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace trialab {

enum ExitCode : int { kExitPass = 0, kExitValidation = 1, kExitUsage = 2 };

inline constexpr std::uint64_t kDefaultSeed = 0xD4;

/// Runs the trialab command line; args exclude the program name.
/// Files named by --out/--report are written directly; everything else goes
/// to `out` (results) and `err` (diagnostics).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --seed, then TRIALAB_SEED, then the default.
std::uint64_t resolve_seed(const std::string& flag_value);

}  // namespace trialab

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tpk::cli {

/// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default --seed.
inline constexpr const char* kSeedEnv = "TPK_SEED";

/// Runs one invocation (`args[0]` is the program name) and returns its exit
/// status. Records go to `out` unless --output names a file; diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tpk::cli

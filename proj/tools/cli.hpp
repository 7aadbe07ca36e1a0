#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace factpow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitUsage = 64;

/// Environment overrides for the default comparison policy.
inline constexpr const char* kEnvBudget = "FACTPOW_EXACT_BUDGET";
inline constexpr const char* kEnvLadder = "FACTPOW_LADDER";

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factpow::cli

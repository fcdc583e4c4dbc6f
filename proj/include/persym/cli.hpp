#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace persym::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kBudgetExceeded = 2,
  kBadArguments = 3,
  kDomainError = 4,
  kCheckFailed = 5,
};

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kBudgetEnvVar = "PERSYM_BUDGET_BITS";

// Sweep budget: PERSYM_BUDGET_BITS if set to an integer, otherwise `fallback`.
int budget_bits(int fallback);

// "5", "1..6" or "1,3,5" -> the listed integers, in order.
std::vector<int> parse_int_list(std::string_view text);

// Runs the command line `args` (args[0] is the program name). Reports go to
// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace persym::cli

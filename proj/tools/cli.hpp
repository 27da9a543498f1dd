#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qchrom::cli {

// Exit codes: 0 yes / property holds, 1 no / property fails,
// 2 input error or bad usage, 3 budget exceeded.
enum ExitCode { kYes = 0, kNo = 1, kInputError = 2, kBudgetExceeded = 3 };

/// Runs one invocation. `args` excludes the program name. The JSON report
/// goes to `out`, the human-readable summary and usage to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qchrom::cli

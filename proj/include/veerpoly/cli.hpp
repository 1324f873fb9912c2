#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace veerpoly {

// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitMath = 1, kExitUsage = 2, kExitBudget = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One batch row per input, in input order.
std::vector<std::string> batch_rows(const std::vector<std::string>& inputs, int jobs, const std::string& format);

}  // namespace veerpoly

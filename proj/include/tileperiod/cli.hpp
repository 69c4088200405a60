#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tileperiod {

// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_user_error = 1, exit_resource_limit = 2 };

// Runs `tileperiod <args...>` (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tileperiod

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace limitkit {

// Exit codes shared by every subcommand.
enum ExitCode : int { exit_ok = 0, exit_false = 1, exit_input = 2, exit_degraded = 3 };

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limitkit

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cubic::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNoConvergence = 2,
};

/// Runs the command line `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubic::cli

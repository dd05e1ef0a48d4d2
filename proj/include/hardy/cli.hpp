#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kSolverError = 3,
  kFitError = 4,
};

/// Runs the command line `args` (args[0] is the program name). The summary line goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli

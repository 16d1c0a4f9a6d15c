#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitHypothesis = 2,
  kExitRefused = 3,
  kExitCache = 4,
  kExitInternal = 5,
};

/// Runs one command line (without the program name). The JSON report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stlab

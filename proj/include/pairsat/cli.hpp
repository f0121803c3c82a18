#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairsat {

/// Stable process exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitResource = 2,
  kExitSat = 10,
  kExitNoModel = 20,
};

/// Runs the command line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pairsat

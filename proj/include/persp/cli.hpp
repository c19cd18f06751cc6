#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace persp {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailure = 1,
  kExitBadInput = 2,
  kExitSolverFailure = 3,
  kExitOracleFailure = 4,
};

/// Entry point of the command-line tool. `args` excludes the program name.
/// Reads the optional JSON document from `in` when no --spec is given.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace persp

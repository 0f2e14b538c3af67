#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypermatch {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInternalError = 2,
  kExitCounterexample = 3,
};

// Runs `hypermatch <subcommand> [flags]`. args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypermatch

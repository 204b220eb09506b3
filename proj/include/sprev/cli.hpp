#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sprev {

// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitUsage = 2 };

// Runs the `sprev` command line. `args` excludes the program name. Normal
// output goes to `out`; diagnostics and timings go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sprev

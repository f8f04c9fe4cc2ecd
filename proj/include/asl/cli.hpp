#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asl {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitPrecondition = 2 };

/// Runs the `asl` command line (args excludes the program name), writing
/// records to out and diagnostics to err. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1,-2,3" into integers. Throws PreconditionError.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace asl

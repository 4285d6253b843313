#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace symdyn {

/// Exit codes: success, negative mathematical answer, error.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitError = 2 };

/// Runs one command line (without the program name), writing the report to
/// out. Errors are reported on out as {"error": {"code", "message"}}.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace symdyn

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace norden {

/// Exit codes: 0 success, 1 a check failed or the structure is invalid,
/// 2 usage or input error.
enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitInput = 2 };

/// Runs the command line (arguments without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace norden

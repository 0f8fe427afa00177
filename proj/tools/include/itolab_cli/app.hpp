#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace itolab::cli {

enum ExitCode : int { kExitOk = 0, kExitLawViolation = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itolab::cli

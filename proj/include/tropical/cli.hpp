#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropical {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailure = 1,
    kExitUsage = 2,
    kExitInconclusive = 3,
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropical

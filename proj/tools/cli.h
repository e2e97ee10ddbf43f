#ifndef MAGICFAB_TOOLS_CLI_H
#define MAGICFAB_TOOLS_CLI_H

#include <string>
#include <vector>

namespace magicfab::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
};

struct CommandResult {
    int exit_code = kSuccess;
    std::string out;
    std::string err;
};

/// Runs the command line `args` (program name excluded) and captures its output.
CommandResult run(const std::vector<std::string> &args);

}  // namespace magicfab::cli

#endif

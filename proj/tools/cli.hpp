#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace curling::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kCapExhausted = 3,
    kCheckpoint = 4,
};

/// Runs one invocation; args excludes the program name. Identical arguments
/// produce identical `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curling::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamgap::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kCapability = 3,
    kInvariant = 4,
};

/// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hamgap::cli

// rabiberry command-line front end. Everything numerical goes through the C API.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rabiberry::cli {

// Exit codes shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    kExitFail = 1,         // validation failure or threshold exceeded
    kExitUsage = 2,        // bad flags or invalid physical input
    kExitNumerical = 3,    // non-convergence or other numerical breakdown
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rabiberry::cli

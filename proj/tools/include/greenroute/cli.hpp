#pragma once

#include <iosfwd>

namespace greenroute::cli {

enum ExitCode : int {
    kOk = 0,
    kInfeasible = 1,
    kUsage = 2,
    kIoError = 3,
};

/// Entry point of the `greenroute` tool. Output goes to the given streams so
/// the commands can be driven in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greenroute::cli

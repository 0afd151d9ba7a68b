#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcdl::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2 };

/// Runs the `qcdl` command line with argv-style arguments (without the
/// program name) and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qcdl::cli

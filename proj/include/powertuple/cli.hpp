#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace powertuple::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kSuccess = 0,
    kNotClosed = 1, // replay not closed, or tuple invalid
    kUsage = 2,
    kUndecided = 3,
};

/// Runs the tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace powertuple::cli

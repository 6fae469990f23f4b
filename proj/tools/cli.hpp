#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace desing::cli {

enum ExitCode : int { kResolved = 0, kInputError = 1, kAborted = 2 };

// Runs one command line (args[0] is the program name). Normal output goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace desing::cli

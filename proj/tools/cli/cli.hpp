#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spanbridge::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,        // everything projected / processed
  kUsage = 1,     // bad flags or configuration
  kPartial = 2,   // finished, but some items were filtered or failed
  kFatal = 3,     // I/O, malformed input, or backend failure
};

/// Runs the spanbridge command line. `args` excludes the program name.
/// Data goes to files or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spanbridge::cli

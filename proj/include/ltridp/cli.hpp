#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltridp::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,     // unreadable / malformed inputs, empty manifest
  kDataError = 3,      // data cannot support training (single class, too few samples)
  kMismatch = 4,       // model and feature store disagree on dimension
};

/// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltridp::cli

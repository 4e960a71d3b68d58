#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace macronet::cli {

enum ExitCode : int {
  kOk = 0,
  kDataError = 1,
  kUsageError = 2,
};

// Runs one command line (argv[0] is the program name) and returns the exit
// status: 0 success, 1 data or validation error, 2 usage error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace macronet::cli

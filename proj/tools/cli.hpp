#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mianneal::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,       // bad flags or configuration
  kParseError = 3,  // malformed graph / registry / summary input
  kIoError = 4,
};

// Entry point behind the mianneal binary. `args` excludes the program name.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mianneal::cli

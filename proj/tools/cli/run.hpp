#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rauzy::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kResourceError = 3,
  kCertificationFailed = 4,
};

// Entry point of the rauzy tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rauzy::cli

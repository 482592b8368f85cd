#pragma once

#include <ostream>

namespace rauzy::cli {

// Runs the quick example checks; prints one line per check and returns the
// number of failures.
int run_selftest(std::ostream& out);

}  // namespace rauzy::cli

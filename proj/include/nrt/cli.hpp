#pragma once

#include <string>
#include <vector>

namespace nrt {

// Runs one CLI invocation; argv excludes the program name.
// Exit codes: 0 success, 1 usage/input error, 2 compute error,
// 3 counterexample flagged by hunt, 4 verify found violations.
int run_cli(const std::vector<std::string>& argv);

}  // namespace nrt

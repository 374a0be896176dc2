#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gup::cli {

// Runs the tool on `args` (without the program name). Returns the exit code:
// 0 success, 1 computation error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gup::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flrwlab {

/// Runs one flrwlab invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on invalid configuration, 3 on runtime failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flrwlab

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kw1 {

/// Entry point of the kw1 command line; args exclude the program name.
/// Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kw1

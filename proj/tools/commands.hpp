#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vrellipse::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kFailure = 3 };

/// Parses the arguments (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vrellipse::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace carnot::cli {

enum ExitCode : int { ok = 0, verification_failure = 1, usage_error = 2 };

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carnot::cli

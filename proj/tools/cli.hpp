#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stringtop::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stringtop::cli

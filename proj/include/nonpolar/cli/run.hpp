#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonpolar::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Runs one command line (without the program name). Reports go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonpolar::cli

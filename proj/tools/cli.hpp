#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toricdyn::cli {

enum ExitCode { Ok = 0, InvariantFailure = 1, InputError = 2 };

/// Runs one command line (without the program name). Results go to out (or --out),
/// machine-readable errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricdyn::cli

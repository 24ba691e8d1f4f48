#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nil2kit::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { ok = 0, negative = 1, input_error = 2, numerical_failure = 3 };

/// Runs one invocation; args exclude the program name. JSON goes to `out`
/// (or the --out file), human summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nil2kit::cli

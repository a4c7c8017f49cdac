#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helfrich::cli {

enum ExitCode : int { ok = 0, input_error = 2, verification_failure = 3, numeric_failure = 4 };

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helfrich::cli

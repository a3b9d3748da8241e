#pragma once

#include <ostream>

namespace rumid::cli {

enum ExitCode : int { kAffirmative = 0, kNegative = 1, kInputError = 2 };

/// Parses argv and runs one subcommand. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rumid::cli

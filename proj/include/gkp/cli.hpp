#pragma once

#include <iosfwd>

namespace gkp::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kUsage = 2 };

/// Entry point of the gkpsim tool. Writes progress to `out` and diagnostics
/// to `err`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkp::cli

#pragma once

#include <ostream>

namespace termcut::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kExpectationFailed = 3 };

/// Runs the `termcut` command line against the given streams; returns the
/// process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace termcut::cli

#pragma once

#include <iosfwd>

namespace sg::cli {

enum ExitCode : int { kPass = 0, kCriteriaFailed = 1, kConfigError = 2, kIoError = 3 };

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sg::cli

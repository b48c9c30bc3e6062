#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toptwo::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Entry point of the `toptwo` executable; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toptwo::cli

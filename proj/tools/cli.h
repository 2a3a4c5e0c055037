#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relex::cli {

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kUsage = 2 };

// Runs the relex command line with argv-style arguments (args[0] is the
// program name). Results go to `out` unless --output names a file;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relex::cli

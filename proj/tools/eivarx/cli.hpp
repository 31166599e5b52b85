#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eivarx::cli {

/// Exit codes: 0 success, 1 usage / config / I/O error, 2 no identifiable structure.
enum ExitCode : int { kOk = 0, kUsage = 1, kStructure = 2 };

/// Runs the tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace eivarx::cli

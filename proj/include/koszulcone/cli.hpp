#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace koszulcone {

/// Exit status: 0 all checks pass, 1 a mathematical check failed, 2 input error.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszulcone

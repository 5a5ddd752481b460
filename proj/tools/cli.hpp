#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opentropy::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kIo = 3, kDomain = 4 };

// args excludes the program name. Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opentropy::cli

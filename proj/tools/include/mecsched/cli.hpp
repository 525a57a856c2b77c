#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mecsched {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name. Errors go to `err` as a single line
// "error: <kind>: <message>".
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mecsched

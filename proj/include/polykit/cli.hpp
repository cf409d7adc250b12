#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polykit {

// Exit status of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,        // a verification came out false
  kExitUsage = 2,         // bad arguments or unreadable input
  kExitInconclusive = 3,  // an equality could not be decided within budget
};

// args excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polykit

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamcay {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitMalformed = 1,
  kExitUnsupported = 2,  // unsupported order or non-generating set
  kExitTimeout = 3,
  kExitTheoremViolation = 4,
  kExitVerifyFailed = 5,
};

// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hamcay

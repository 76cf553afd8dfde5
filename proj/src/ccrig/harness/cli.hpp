#pragma once

#include <string>
#include <vector>

namespace ccrig {

// Entry point behind the binary: argv without the program name. Returns the
// process exit code (0 ok, 1 configuration/usage error, 2 runtime error).
int cli_run(const std::vector<std::string>& args);

}  // namespace ccrig

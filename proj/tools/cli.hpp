// Command-line front end, callable in-process so tests can drive it.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace okas::cli {

// Runs `okas <args...>` (args excludes the program name). Reports go to out,
// errors to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace okas::cli

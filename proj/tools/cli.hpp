#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace las::cli {

enum ExitCode : int { ok = 0, usage = 1, input = 2, no_model = 10 };

// args excludes the program name. Everything the command prints goes to `out`
// (or the -o file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace las::cli

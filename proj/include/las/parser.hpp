#pragma once

#include <string_view>

#include "las/ast.hpp"
#include "las/task.hpp"

namespace las {

// Parses `.lp` text. Throws ParseError (with position), SafetyError or
// ArityError.
Program parse_program(std::string_view text);

// Parses `.task` text: background statements, mode declarations, typed
// constants, examples and search bounds. Additionally throws TaskError for
// duplicate example ids and nonpositive penalties.
LasTask parse_task(std::string_view text);

// Parses a single ground atom such as `p(a,1)`.
Atom parse_atom(std::string_view text);

} // namespace las

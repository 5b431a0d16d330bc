#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace capax::cli {

// Runs one CLI invocation (no program name in args). Pure: reads only its
// arguments and the CAPAX_ORACLE_CAP environment variable, writes the
// result envelope to `out` and diagnostics to `err`.
//
// Exit codes: 0 ok (including an Unknown capacity), 1 parse/domain error,
// 2 unsupported or --require-finite violated, 3 resource cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace capax::cli

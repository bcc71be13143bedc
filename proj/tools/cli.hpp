#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace promethee::cli {

/// Run the command-line tool on `args` (program name excluded), writing
/// regular output to `out` and diagnostics to `err`. Returns the process
/// exit code: 0 success, 1 usage error, 2 data or configuration error,
/// 3 engine verification mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace promethee::cli

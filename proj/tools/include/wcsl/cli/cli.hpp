#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wcsl::cli {

// Runs one `wcsl` invocation. `args` excludes the program name. Results go to
// `out` (or the --out file), diagnostics and error JSON to `err`.
// Returns 0 on success, 1 on a module error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcsl::cli

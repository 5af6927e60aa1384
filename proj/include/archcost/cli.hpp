#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace archcost {

// Runs one CLI invocation. Exit codes: 0 success, 1 usage error, 2 parse
// error, 3 semantic error. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace archcost

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hodge {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_failed_verdict = 1, ///< only under --strict
    exit_usage = 2,
    exit_numerical = 3,
};

/// Runs one CLI invocation; `args` excludes the program name. Reports go to `out`
/// (or to --output), diagnostics and the synopsis to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hodge

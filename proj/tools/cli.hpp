#ifndef DLAMBDA_TOOLS_CLI_HPP
#define DLAMBDA_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dlambda::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_config = 2,
    exit_numerical_failure = 3,
    exit_io_error = 4,
};

/// Runs the command-line interface. args excludes the program name. Data go
/// to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:step" into an inclusive uniform grid.
std::vector<double> parse_sweep(const std::string& spec);

}  // namespace dlambda::cli

#endif

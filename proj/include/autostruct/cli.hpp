#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace autostruct {

/// Exit codes shared by every subcommand.
enum ExitCode : int { exit_true = 0, exit_false = 1, exit_error = 2 };

/// Runs `autostruct decide|compile|witness|analyze ...`. `args` excludes the
/// program name. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autostruct

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sharpwt {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitToleranceFail = 1, kExitUsage = 2, kExitDomain = 3 };

/// Runs `sharpwt <subcommand> ...` with args excluding the program name. Data goes to `out`,
/// diagnostics and run metadata to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sharpwt

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circact {

/// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). JSON goes to
/// `out` unless --output names a file; diagnostics go to `err`. `in` is read
/// when no input file is given. Never throws for user errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace circact

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace icamuv::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kValidation = 2,
    kPartial = 3,  // enumeration hit a limit; partial result written
};

/// Runs one subcommand. Documents go to `-o` files or `out`; diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace icamuv::cli

#pragma once

#include <string>
#include <vector>

namespace mpenergy {

/// Entry point behind the binary: parses `args` (without argv[0]) and runs
/// one subcommand. Returns the process exit code; never throws.
int run_cli(const std::vector<std::string>& args);

} // namespace mpenergy

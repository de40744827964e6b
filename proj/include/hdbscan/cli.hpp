#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdbscan {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInternal = 3;

/// Entry point behind the `hdbscan` executable. `args` excludes the program
/// name. Subcommands: cluster, dbscan-star, bench, oracle-check.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdbscan

#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

// Command-line front end. Exit codes: 0 success, 1 computational failure,
// 2 usage error (unknown flags, malformed specs, unreadable inputs).

namespace loewner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Time grids: `lin:a:b:n` (n points, both ends included), `log:a:b:n`
/// (n log-spaced points, a > 0) or a comma-separated list. The result must be
/// strictly increasing. Throws ArgumentError.
[[nodiscard]] std::vector<double> parse_grid(std::string_view spec);

/// Runs the tool on argv, writing results to `out` (unless a subcommand's
/// --out names a file) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli

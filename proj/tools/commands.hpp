#pragma once

#include <iosfwd>

namespace imcf::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

/// Parses argv, runs one subcommand and returns its exit code. Reports go to
/// `out` (when no --out file is given) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace imcf::cli

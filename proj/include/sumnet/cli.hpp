#pragma once

// Command-line front end. Subcommands: structure, bound, code, network,
// verify, table. Exit status is one of the constants below.

#include <iosfwd>

namespace sumnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;              // parse or validation error
inline constexpr int kExitNoConstruction = 3;    // no code construction applies
inline constexpr int kExitVerifyFailed = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumnet

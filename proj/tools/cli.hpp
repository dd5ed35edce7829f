#pragma once

#include <iosfwd>

namespace tprim::cli {

/// Exit codes: 0 success, 1 assertion failure or theorem violation,
/// 2 bad arguments or input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tprim command line. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tprim::cli

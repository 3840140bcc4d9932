#pragma once

#include <ostream>

namespace magma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInconsistent = 2;

// Entry point for the `magma` tool. Exit codes: 0 on success, 1 on bad
// arguments or unreadable/malformed inputs, 2 when a consistency check fails
// (closure conflict, invalid witness).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magma::cli

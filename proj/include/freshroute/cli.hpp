#pragma once

#include <iosfwd>

namespace freshroute::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_infeasible = 2;

// Entry point for `freshroute <solve|evaluate|compare|oracle|gen> [flags]`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace freshroute::cli

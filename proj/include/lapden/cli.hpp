#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lapden::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed input
inline constexpr int kExitDiverged = 3;  // non-finite iterate during a run

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lapden::cli

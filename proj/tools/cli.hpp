#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spround::cli {

// Exit codes shared by every subcommand.
inline constexpr int kYes = 0;      // decided yes / verification passed / success
inline constexpr int kNo = 1;       // decided no / verification failed / nothing found
inline constexpr int kUsage = 2;    // bad flags or malformed input
inline constexpr int kBudget = 3;   // an exhaustive search hit its budget

/// Runs one invocation; `args` excludes the program name. A file argument of
/// "-" reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace spround::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args excludes the program name). Results go to
// `out` as JSON or CSV, error objects too; `err` gets help and diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bop::cli

#pragma once

#include <ostream>

namespace wc::cli {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;

// Parses argv, runs one command, writes the JSON report to `out` and
// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wc::cli

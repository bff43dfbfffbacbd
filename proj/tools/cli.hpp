#pragma once

#include <ostream>

namespace knockout::cli {

/// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitNotFound = 1;  // no bracket found, invalid bracket, unmet precondition
constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed input

/// Entry point of the `knockout` tool, with the streams injected for tests.
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knockout::cli

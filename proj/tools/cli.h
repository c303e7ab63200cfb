#pragma once

#include <iosfwd>

namespace origin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitSyntaxError = 2;
inline constexpr int kExitBudgetExceeded = 3;
inline constexpr int kExitUsage = 64;

/// Entry point shared by the `origin` binary and the CLI tests.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace origin::cli

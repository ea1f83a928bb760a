#pragma once

#include <iosfwd>

namespace hadamard::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailure = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kParseError = 3;

/// Runs one command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hadamard::cli

#pragma once

#include <iosfwd>

namespace markoff::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFalsified = 2;

/// Full command line entry point; writes the payload to out and
/// diagnostics to err.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace markoff::cli

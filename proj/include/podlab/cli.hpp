#pragma once

// The podlab command line: series, eta-check, verify, density, hecke.

#include <ostream>
#include <string>
#include <vector>

namespace podlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a requested verification did not hold
inline constexpr int kExitUsage = 2;   // bad flags or input rejected before computing
inline constexpr int kExitError = 3;   // anything else

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace podlab::cli

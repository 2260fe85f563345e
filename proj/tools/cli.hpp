#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shuttle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Machine output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shuttle::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cobench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitEndpoint = 3;

/// Runs one command line (without the program name). Diagnostics go to
/// `err` as single lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cobench::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace luxforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Runs the luxforge command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace luxforge::cli

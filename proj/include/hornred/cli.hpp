#pragma once

#include <string>
#include <vector>

namespace hornred::cli {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitNoInput = 66;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

/// Runs one command line; argv[0] is the program name. Never throws.
Result run(const std::vector<std::string>& argv);

}  // namespace hornred::cli

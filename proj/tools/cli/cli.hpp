#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zcd::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kImproperPosterior = 3,
  kNumericalFailure = 4,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zcd::cli

#pragma once

#include <string>
#include <vector>

namespace s3tb::cli {

/// Exit codes: 0 success, 2 invalid input or no solution, 3 integration failure,
/// other nonzero values for command-line parse errors.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

/// Built-in initial states for `simulate --scenario`.
[[nodiscard]] std::vector<std::string> scenario_names();

}  // namespace s3tb::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ep::cli {

enum ExitCode : int {
  kSuccess = 0,
  kRuntimeError = 1,
  kUsageError = 2,
};

/// Entry point shared by the `epot` binary and the integration tests.
/// `args` excludes the program name, e.g. {"run", "--arms", "0.6,0.5", ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ep::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collateral::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kFluxDomain = 3,
  kNoIdling = 4,
  kTruncation = 5,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collateral::cli

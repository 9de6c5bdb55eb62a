#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppbif::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfigError = 2,
  kDomainError = 3,
  kCounterexamples = 4,
};

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppbif::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qop::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2 };

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qop::cli

#pragma once

#include <string>
#include <vector>

namespace wgtk::cli {

/// Runs one toolkit invocation. Returns the process exit code:
/// 0 success, 1 validation/usage error, 2 runtime error.
int run(const std::vector<std::string>& args);

int run_main(int argc, const char* const* argv);

} // namespace wgtk::cli

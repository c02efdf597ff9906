#pragma once

#include <string>
#include <vector>

namespace alab::cli {

// Exit codes: 0 success, 1 config error, 2 solver/bracketing failure,
// 3 I/O error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace alab::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace texclass {

/// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the `texclass` tool; subcommands generate, extract,
/// train, evaluate and predict.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace texclass

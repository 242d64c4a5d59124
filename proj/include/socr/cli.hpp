#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace socr::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kClaimFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kNumerical = 3;

/// Runs one command; `args` excludes the program name. JSON goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socr::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abelmoments::cli {

/// Exit codes: 0 success, 1 domain or validation error, 2 adaptive truncation
/// that did not converge.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNonConvergence = 2;

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelmoments::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lesionroi::cli {

/// Exit codes of the lesionroi executable.
inline constexpr int kOk = 0;
inline constexpr int kItemFailure = 1;
inline constexpr int kConfigError = 2;

/// args excludes the program name. The one-line summary goes to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace lesionroi::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modelglass::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// JSON reports carry this so consumers can detect layout changes.
inline constexpr int kSchemaVersion = 1;

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 domain error, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modelglass::cli

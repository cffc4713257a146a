#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bicres::cli {

inline constexpr const char* kToolName = "bicres";
inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< I/O and unexpected errors
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; errors are written to `err` as a JSON
/// object. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bicres::cli

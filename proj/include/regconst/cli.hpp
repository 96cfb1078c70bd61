#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace regconst {

inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitError = 2;

/// Runs one CLI invocation. `args` excludes the program name.
/// Exit codes: 0 success or true verdict, 1 false verdict, 2 usage or data error;
/// every error is a single line `error:<category>: message` on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regconst

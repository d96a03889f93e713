#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beliefrev::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConstraintFailure = 1;
inline constexpr int kExitInputError = 2;

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beliefrev::cli

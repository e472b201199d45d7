#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sephash::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `sephash` tool; `args` excludes the program name.
/// Returns 0 on success or pass, 1 when a checked property fails (a witness
/// is printed), 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sephash::cli

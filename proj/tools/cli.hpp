#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bvg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;         // validation error or malformed input
inline constexpr int kExitPrecondition = 2;  // hypothesis fails or a cap binds

/// Runs one command line (without the program name).  Reports go to --out
/// or `out`; diagnostics go to `err`.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvg::cli

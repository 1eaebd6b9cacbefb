#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bpgeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name).
///
/// JSON reports and error objects go to `out`; usage text goes to `err`;
/// `--matrix -` reads from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace bpgeo::cli

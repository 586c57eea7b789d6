#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symsector {

// Exit codes: 0 success, 1 invalid input, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

// Runs one command line (program name excluded). JSON goes to out, diagnostics to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symsector

#pragma once

// The `hardy` command line, callable in-process so tests can drive it.
//
// Exit codes: 0 success, 2 usage or input error, 3 a verification check
// failed, 4 numerical failure.

#include <ostream>
#include <string>
#include <vector>

namespace hardy {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitNumerical = 4;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy

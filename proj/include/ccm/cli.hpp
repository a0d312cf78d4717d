#pragma once

// Command-line front end: ccsolve {solve | bench | gen | pinv}.

#include <iosfwd>

namespace ccm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;    // usage or input error
inline constexpr int kExitNumeric = 3;  // solver failure marker

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccm

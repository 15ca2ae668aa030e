#pragma once

#include <string>
#include <vector>

namespace nsv::cli {

inline constexpr const char* kToolVersion = "nsvlab 1.0.0";

/// Exit codes: 0 success, 2 invalid configuration/usage, 3 verification
/// failure (hard assertions only), 4 numerical blow-up.
int dispatch(const std::vector<std::string>& args);

}  // namespace nsv::cli

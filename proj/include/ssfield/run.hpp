#pragma once

#include <ostream>

#include "ssfield/config.hpp"

namespace ssf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;

// Executes a validated config, writing CSV files under config.out and one
// summary line per check to `log`.
int run(const RunConfig& config, std::ostream& log);

}  // namespace ssf

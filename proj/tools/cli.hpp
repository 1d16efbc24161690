// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace risra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point of the `risra` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace risra::cli

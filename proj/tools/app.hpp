#pragma once

#include <ostream>

namespace colombeau::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitSchema = 2;

/// The command-line entry point with injectable streams.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace colombeau::app

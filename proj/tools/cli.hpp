#pragma once
#include <iosfwd>

namespace syncword::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotSynchronizing = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfrastructure = 3;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace syncword::cli

#pragma once

#include <iosfwd>

namespace kwent::cli {

// Exit statuses shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `kwent` executable; all output goes to the given
// streams so the commands can be driven in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kwent::cli

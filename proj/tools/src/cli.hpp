#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bblab::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kDomain = 2;
inline constexpr int kUsage = 64;
inline constexpr int kBadInput = 65;
inline constexpr int kNoInput = 66;
inline constexpr int kCantCreate = 73;

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bblab::cli

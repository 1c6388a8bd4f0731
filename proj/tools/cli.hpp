#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mee::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kMalformed = 2;
inline constexpr int kResource = 3;
inline constexpr int kClassification = 4;

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mee::cli
